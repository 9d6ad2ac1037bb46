#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gebr/container.hpp"
#include "gebr/gebr.hpp"

using namespace gebr;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInvalid = 2, kNotRecoverable = 3, kUnknown = 4 };

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::SingularModH:
    case ErrorCode::GNotInvertible:
    case ErrorCode::NotInvertible:
    case ErrorCode::UnsolvablePattern:
    case ErrorCode::TooManyErasures:
    case ErrorCode::TooManyLines:
    case ErrorCode::InsufficientKnowns:
    case ErrorCode::InconsistentKnowns:
      return kNotRecoverable;
    case ErrorCode::WitnessCheckFailed:
      return kInternal;
    default:
      return kInvalid;
  }
}

struct ParamFlags {
  std::size_t p = 0, tau = 0, k = 0, r = 0;
  unsigned w = 1;
  std::string g = "01";
  std::string kind = "gebr";

  void add(CLI::App* app) {
    app->add_option("-p", p, "prime p")->required();
    app->add_option("-t,--tau", tau, "tau")->required();
    app->add_option("-k", k, "information columns")->required();
    app->add_option("-r", r, "parity columns")->required();
    app->add_option("-w", w, "symbol width in bits (1..8)");
    app->add_option("-g", g, "g(x) as hex bytes, x^0 first");
    app->add_option("--kind", kind, "gebr or gbr")->check(CLI::IsMember({"gebr", "gbr"}));
  }
  CodeParams params() const {
    gf::check_width(w);
    return derive_params(p, tau, k, r, w, parse_hex(g, w));
  }
  CodeKind code_kind() const { return kind == "gbr" ? CodeKind::Gbr : CodeKind::Gebr; }
};

std::vector<std::uint8_t> read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::BadArgument, "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::vector<std::uint8_t>& bytes) {
  if (path == "-") {
    std::cout.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::BadArgument, "cannot write " + path);
}

std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      std::size_t used = 0;
      const unsigned long v = std::stoul(item, &used);
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadArgument, "bad list entry '" + item + "'");
    }
  }
  return out;
}

/// "a:b,c,d" -> (a, {b,c,d}).
std::pair<std::size_t, std::vector<std::size_t>> parse_keyed(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::BadArgument, "expected N:list, got '" + text + "'");
  const auto key = parse_list(text.substr(0, colon));
  if (key.size() != 1) throw Error(ErrorCode::BadArgument, "expected one index before ':' in '" + text + "'");
  return {key[0], parse_list(text.substr(colon + 1))};
}

struct ErasureFlags {
  std::string cols, lines;
  std::vector<std::string> symbols;

  void add(CLI::App* app, const std::string& prefix) {
    app->add_option("--" + prefix + "cols", cols, "erased columns, e.g. 0,5");
    app->add_option("--" + prefix + "lines", lines, "erased lines as slope:list, e.g. 2:0,1,3,4");
    app->add_option("--" + prefix + "symbols", symbols, "erased symbols inside one column as col:rows (repeatable)");
  }
  ErasureSpec spec() const {
    ErasureSpec er;
    er.columns = parse_list(cols);
    if (!lines.empty()) {
      auto [slope, ls] = parse_keyed(lines);
      er.lines = LineErasure{slope, ls};
    }
    for (const auto& s : symbols) er.symbols.push_back(parse_keyed(s));
    return er;
  }
};

int cmd_params(const ParamFlags& f, bool oracle) {
  const CodeParams c = f.params();
  std::cout << to_header(c) << "\n"
            << "m=" << c.m() << "\n"
            << "g=" << to_string(c.g()) << "\n"
            << "h=" << to_string(c.h()) << "\n"
            << "alpha=" << c.alpha() << "\n"
            << "nu=" << c.nu() << "\n"
            << "gamma=" << c.gamma() << "\n"
            << "p^(nu+1)=" << c.recoverable_length() << "\n"
            << "gcd(g,h)=1: " << (c.gcd_g_h_one() ? "yes" : "no") << "\n"
            << "gcd(1+x^tau,h)=1: " << (c.gcd_low_h_one() ? "yes" : "no") << "\n";
  const ConditionVerdict v = f.code_kind() == CodeKind::Gbr ? classify_gbr(c) : classify(c);
  std::cout << to_string(v) << "\n";
  if (oracle) std::cout << "oracle: " << to_string(oracle_classify(c)) << "\n";
  switch (v.verdict) {
    case Verdict::Recoverable: return kOk;
    case Verdict::NotRecoverable: return kNotRecoverable;
    case Verdict::Unknown: return kUnknown;
  }
  return kInternal;
}

int cmd_encode(const ParamFlags& f, const std::string& in, const std::string& out) {
  const CodeParams c = f.params();
  try {
    const ConditionVerdict v = f.code_kind() == CodeKind::Gbr ? classify_gbr(c) : classify(c);
    if (v.verdict != Verdict::Recoverable) std::cerr << "warning: " << to_string(v) << "\n";
  } catch (const Error& e) {
    std::cerr << "warning: " << e.what() << "\n";
  }
  write_file(out, encode_stream(read_file(in), c, f.code_kind()));
  return kOk;
}

int cmd_decode(const ErasureFlags& f, const std::string& in, const std::string& out, const std::string& restored_path) {
  std::vector<Container> restored;
  const auto bytes = read_file(in);
  const auto data = decode_stream(bytes, f.spec(), &restored);
  write_file(out, data);
  if (!restored_path.empty()) write_file(restored_path, write_stream(restored, data.size()));
  return kOk;
}

int cmd_erase(const ErasureFlags& f, const std::string& in, const std::string& out) {
  auto [cts, len] = read_stream(read_file(in), false);
  const ErasureSpec er = f.spec();
  for (auto& ct : cts) ct = erase(ct, er);
  write_file(out, write_stream(cts, len, true));
  return kOk;
}

struct SweepFlags {
  std::string p = "3,5,7", tau, g = "one", out = "-";
  std::size_t max_m = 64, n_min = 2, n_max = 0;
};

int cmd_sweep(const SweepFlags& f) {
  std::ostringstream csv;
  csv << "p,tau,g,k+r,theorem_verdict,oracle_verdict,agree\n";
  std::size_t rows = 0, decided = 0, disagree = 0;
  for (std::size_t p : parse_list(f.p)) {
    std::vector<std::size_t> taus = parse_list(f.tau);
    if (f.tau.empty())
      for (std::size_t t = 1; p * t <= f.max_m; ++t) taus.push_back(t);
    for (std::size_t tau : taus) {
      const Poly phi = cyclic_sum(tau, p);
      std::vector<Poly> gs;
      if (f.g == "one")
        gs = {Poly::one()};
      else if (f.g == "all")
        gs = divisors_gf2(phi);
      else
        gs = {parse_hex(f.g)};
      const std::size_t m = p * tau;
      for (const Poly& g : gs) {
        if (g == phi) continue;
        std::optional<OracleProfile> prof;
        try {
          prof = oracle_profile(p, tau, g);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::TooLarge) throw;
        }
        const std::size_t hi = f.n_max ? std::min(f.n_max, m) : m;
        for (std::size_t n = std::max<std::size_t>(f.n_min, 2); n <= hi; ++n) {
          const CodeParams c = derive_params(p, tau, n - 1, 1, 1, g);
          const ConditionVerdict th = classify_clause(c);
          std::string ov = "TooLarge", agree = "n/a";
          if (prof) {
            const Verdict o = prof->first_bad >= n ? Verdict::Recoverable : Verdict::NotRecoverable;
            ov = to_string(o);
            if (th.verdict != Verdict::Unknown) {
              ++decided;
              agree = th.verdict == o ? "true" : "false";
              disagree += th.verdict != o;
            }
          }
          csv << p << "," << tau << "," << to_hex(g) << "," << n << "," << to_string(th.verdict);
          if (th.rule != Rule::None) csv << " (" << to_string(th.rule) << ")";
          csv << "," << ov << "," << agree << "\n";
          ++rows;
        }
      }
    }
  }
  const std::string text = csv.str();
  write_file(f.out, std::vector<std::uint8_t>(text.begin(), text.end()));
  std::cerr << "rows=" << rows << " decided=" << decided << " disagreements=" << disagree << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GEBR/GBR array erasure codes"};
  app.require_subcommand(1);

  ParamFlags pf_params, pf_encode;
  bool oracle = false;
  auto* params = app.add_subcommand("params", "derive parameters and classify recoverability");
  pf_params.add(params);
  params->add_flag("--oracle", oracle, "also run the exhaustive kernel oracle");

  std::string enc_in, enc_out;
  auto* enc = app.add_subcommand("encode", "encode a file into a container stream");
  pf_encode.add(enc);
  enc->add_option("-i,--input", enc_in, "input file or -")->required();
  enc->add_option("-o,--output", enc_out, "output container stream or -")->required();

  ErasureFlags dec_flags, erase_flags;
  std::string dec_in, dec_out, dec_restored;
  auto* dec = app.add_subcommand("decode", "restore erasures and recover the original file");
  dec->add_option("-i,--input", dec_in, "container stream or -")->required();
  dec->add_option("-o,--output", dec_out, "recovered file or -")->required();
  dec->add_option("--restored", dec_restored, "also write the restored container stream");
  dec_flags.add(dec, "erased-");

  std::string er_in, er_out;
  auto* era = app.add_subcommand("erase", "zero out columns, lines or symbols in every chunk");
  era->add_option("-i,--input", er_in, "container stream or -")->required();
  era->add_option("-o,--output", er_out, "damaged container stream or -")->required();
  erase_flags.add(era, "");

  SweepFlags sf;
  auto* sweep = app.add_subcommand("sweep", "compare closed-form verdicts with the kernel oracle (CSV)");
  sweep->add_option("--p", sf.p, "primes, e.g. 3,5,7");
  sweep->add_option("--tau", sf.tau, "tau values; default all with p*tau <= --max-m");
  sweep->add_option("--max-m", sf.max_m, "bound on p*tau when --tau is omitted");
  sweep->add_option("--n-min", sf.n_min, "smallest k+r");
  sweep->add_option("--n-max", sf.n_max, "largest k+r (default p*tau)");
  sweep->add_option("--g", sf.g, "one, all (every proper divisor of the block sum) or a hex polynomial");
  sweep->add_option("-o,--output", sf.out, "CSV output or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (*params) return cmd_params(pf_params, oracle);
    if (*enc) return cmd_encode(pf_encode, enc_in, enc_out);
    if (*dec) return cmd_decode(dec_flags, dec_in, dec_out, dec_restored);
    if (*era) return cmd_erase(erase_flags, er_in, er_out);
    if (*sweep) return cmd_sweep(sf);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.witness()) std::cerr << "witness=" << to_hex(Poly(*e.witness(), e.witness_width())) << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}
