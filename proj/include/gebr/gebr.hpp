#pragma once

#include "array.hpp"
#include "error.hpp"
#include "gbr_codec.hpp"
#include "gebr_codec.hpp"
#include "gf.hpp"
#include "lines.hpp"
#include "params.hpp"
#include "poly.hpp"
#include "recoverability.hpp"
#include "ring.hpp"
#include "ring_linalg.hpp"
#include "scalar_linalg.hpp"
