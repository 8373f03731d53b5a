// qecc-forge: construct, verify, inspect and search codes from the command line.
//
// Exit codes: 0 success, 1 verification failure (report on stdout),
// 2 usage, format or range error (message on stderr).

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "qecc_forge/qecc_forge.hpp"

using namespace qforge;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Shared {
  std::string input = "-";
  std::string output = "-";
  std::string format = "json";
  unsigned jobs = 0;

  bool text() const { return format == "text"; }
  unsigned workers() const { return jobs ? jobs : default_jobs(); }
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open input '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_all(const Shared& io, const std::string& text) {
  if (io.output == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(io.output, std::ios::binary);
  if (!out) throw UsageError("cannot open output '" + io.output + "'");
  out << text;
}

void emit(const Shared& io, const json& j) { write_all(io, j.dump(2) + "\n"); }

json read_json(const Shared& io) {
  const auto text = read_all(io.input);
  if (text.find_first_not_of(" \t\r\n") == std::string::npos) throw UsageError("empty input");
  return json::parse(text);
}

CodeCandidate read_bundle(const Shared& io) { return candidate_from_json(read_json(io)); }

std::string join(const std::vector<std::uint64_t>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + std::to_string(v[i]);
  return s;
}

std::string bundle_text(const CodeCandidate& c) {
  std::string s = "# " + (c.name.empty() ? std::string("bundle") : c.name) + "\n";
  s += "# k=" + std::to_string(c.k) + " d=" + std::to_string(c.d) + " M=" + std::to_string(c.M()) + "\n";
  s += "# f_support: " + join(c.f.support()) + "\n";
  return s + matrix_to_text(c.A);
}

void emit_bundle(const Shared& io, const CodeCandidate& c) {
  if (io.text()) {
    write_all(io, bundle_text(c));
  } else {
    emit(io, candidate_to_json(c));
  }
}

/// Verifies c; on failure writes the report and returns false.
bool require_verified(const Shared& io, const CodeCandidate& c) {
  const auto r = verify(c, {.keep_transcript = false, .jobs = io.workers()});
  if (r.passed) return true;
  emit(io, verify_report_to_json(c, r));
  return false;
}

// ---- function input --------------------------------------------------------

struct FunctionArgs {
  unsigned m = 0;
  std::string anf;
  std::string truth_hex;
  std::vector<std::uint64_t> support;
};

void add_function_args(CLI::App* cmd, FunctionArgs& fa) {
  cmd->add_option("--m", fa.m, "number of variables");
  cmd->add_option("--anf", fa.anf, "algebraic normal form, e.g. 'v1v2 ^ v3'");
  cmd->add_option("--truth-hex", fa.truth_hex, "truth vector in hex, y_{2^m-1} most significant");
  cmd->add_option("--support", fa.support, "indices v with f(v) = 1")->delimiter(',');
}

BooleanFunction read_function(const Shared& io, const FunctionArgs& fa) {
  const int given = !fa.anf.empty() + !fa.truth_hex.empty() + !fa.support.empty();
  if (given > 1) throw UsageError("give at most one of --anf, --truth-hex, --support");
  if (given == 1) {
    if (fa.m == 0) throw UsageError("--m is required with --anf, --truth-hex or --support");
    if (!fa.anf.empty()) return from_anf(fa.m, fa.anf);
    if (!fa.truth_hex.empty()) return from_truth_hex(fa.m, fa.truth_hex);
    return BooleanFunction::from_support(fa.m, fa.support);
  }
  const auto j = read_json(io);
  if (j.contains("A_f")) return candidate_from_json(j).f;
  return function_from_json(j);
}

// ---- subcommands -------------------------------------------------------------

int run_cset(const Shared& io, const FunctionArgs& fa) {
  const auto f = read_function(io, fa);
  const auto c = cset(f, io.workers()).elements();
  if (io.text()) {
    write_all(io, join(c) + "\n");
  } else {
    emit(io, {{"m", f.m()}, {"weight", f.weight()}, {"size", c.size()}, {"cset", c}});
  }
  return 0;
}

int run_autocorr(const Shared& io, const FunctionArgs& fa) {
  const auto f = read_function(io, fa);
  const auto r = autocorrelation(f);
  if (io.text()) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) s += (i ? " " : "") + std::to_string(r[i]);
    write_all(io, s + "\n");
  } else {
    emit(io, {{"m", f.m()}, {"weight", f.weight()}, {"r", r}});
  }
  return 0;
}

int run_anf(const Shared& io, const FunctionArgs& fa) {
  const auto f = read_function(io, fa);
  const auto monos = anf(f);
  const auto text = anf_to_string(monos);
  if (io.text()) {
    write_all(io, text + "\n");
  } else {
    emit(io, {{"m", f.m()}, {"anf", text}, {"monomials", monos}, {"truth_hex", to_truth_hex(f)}});
  }
  return 0;
}

int run_verify(const Shared& io, unsigned d, bool all_failures, bool transcript) {
  auto c = read_bundle(io);
  if (d) c.d = d;
  VerifyReport report;
  const auto cert = certify(c, &report, {.all_failures = all_failures, .keep_transcript = true, .jobs = io.workers()});
  if (!cert) {
    emit(io, verify_report_to_json(c, report));
    return 1;
  }
  if (io.text()) {
    std::string s = "verified ((" + std::to_string(c.k) + "," + std::to_string(cert->M) + "," +
                    std::to_string(c.d) + ")) after " + std::to_string(cert->transcript.size()) + " errors\n";
    for (const auto& st : cert->stabilizers) s += "stabilizer " + st + "\n";
    write_all(io, s);
  } else {
    emit(io, certificate_to_json(*cert, transcript));
  }
  return 0;
}

int run_build_projector(const Shared& io) {
  const auto c = read_bundle(io);
  if (c.k > kMaxDenseQubits) {
    throw std::out_of_range("projector needs k <= " + std::to_string(kMaxDenseQubits));
  }
  const auto p = build_projector(c, io.workers());
  if (io.text()) {
    write_all(io, exact_matrix_to_text(p));
  } else {
    json j{{"k", c.k}, {"d", c.d}};
    const auto body = exact_matrix_to_json(p);
    for (const auto& [key, value] : body.items()) j[key] = value;
    emit(io, j);
  }
  return 0;
}

int run_distance_oracle(const Shared& io, unsigned d) {
  const auto text = read_all(io.input);
  const auto start = text.find_first_not_of(" \t\r\n");
  if (start == std::string::npos) throw UsageError("empty input");
  ExactMatrix p = ExactMatrix::zero(1);
  if (text[start] == '{') {
    const auto j = json::parse(text);
    if (j.contains("A_f")) {
      const auto c = candidate_from_json(j);
      if (c.k > kMaxDenseQubits) throw std::out_of_range("projector needs k <= " + std::to_string(kMaxDenseQubits));
      p = build_projector(c, io.workers());
    } else {
      p = exact_matrix_from_json(j);
    }
  } else {
    p = exact_matrix_from_text(text);
  }
  const unsigned k = qubits_of(p);
  if (d == 0 || d - 1 > k) throw std::out_of_range("--d must be in [1, " + std::to_string(k + 1) + "]");
  const auto o = distance_oracle(p, k, d - 1, io.workers());
  if (io.text()) {
    std::string s = std::string(o.passed ? "passed" : "failed") + " after " + std::to_string(o.checked) + " errors";
    if (o.first_violation) s += ", first violation " + o.first_violation->to_string(true);
    write_all(io, s + "\n");
  } else {
    emit(io, {{"passed", o.passed},
              {"k", k},
              {"d", d},
              {"errors_checked", o.checked},
              {"first_violation", o.first_violation ? json(o.first_violation->to_string(true)) : json(nullptr)}});
  }
  return o.passed ? 0 : 1;
}

int run_family(const Shared& io, const std::string& name, unsigned m) {
  const auto fam = parse_family(name);
  if (family_takes_m(fam) && m == 0) throw UsageError("family " + name + " needs --m");
  emit_bundle(io, make({fam, m}));
  return 0;
}

int run_extend(const Shared& io, unsigned times) {
  auto c = read_bundle(io);
  if (!require_verified(io, c)) return 1;
  for (unsigned i = 0; i < times; ++i) c = extend_k2(c);
  emit_bundle(io, c);
  return 0;
}

int run_shrink(const Shared& io, std::optional<std::uint64_t> drop, std::optional<std::uint64_t> target) {
  if (drop.has_value() == target.has_value()) throw UsageError("give exactly one of --drop, --M");
  auto c = read_bundle(io);
  if (!require_verified(io, c)) return 1;
  if (drop) {
    c = shrink_M(c, *drop);
  } else {
    if (*target == 0 || *target > c.M()) {
      throw std::out_of_range("--M must be in [1, " + std::to_string(c.M()) + "]");
    }
    while (c.M() > *target) c = shrink_M(c, c.f.support().back());
  }
  emit_bundle(io, c);
  return 0;
}

int run_oqec(const Shared& io, unsigned s, unsigned t, unsigned d, const std::string& matrix_level) {
  const auto c = read_bundle(io);
  const unsigned dist = d ? d : c.d;
  if (t > s || s > c.k) {
    throw std::out_of_range("need 0 <= t <= s <= k, got t=" + std::to_string(t) + " s=" + std::to_string(s) +
                            " k=" + std::to_string(c.k));
  }
  if (!require_verified(io, monomial_candidate(c.k, s, dist, c.A))) return 1;
  const auto code = build_oqec(c.k, s, t, dist, c.A);
  bool level = c.k <= 6;
  if (matrix_level == "on") {
    if (c.k > kMaxDenseQubits) throw std::out_of_range("matrix-level checks need k <= " + std::to_string(kMaxDenseQubits));
    level = true;
  } else if (matrix_level == "off") {
    level = false;
  }
  const auto report = certify_oqec(code, level);
  emit(io, oqec_to_json(code, report));
  return report.passed ? 0 : 1;
}

struct SearchArgs {
  unsigned k = 0;
  std::uint64_t M = 0;
  unsigned d = 2;
  std::string mode = "first";
  std::uint64_t budget = 1'000'000;
  std::uint64_t seed = 1;
  std::string f;
  std::string f_source;
  unsigned restarts = 64;
};

int run_search(const Shared& io, const SearchArgs& a) {
  SearchSpec spec{.k = a.k, .M = a.M, .d = a.d, .mode = parse_search_mode(a.mode), .budget = a.budget};
  spec.seed = a.seed;
  spec.restarts = a.restarts;
  spec.jobs = io.workers();
  if (!a.f.empty()) {
    if (std::filesystem::exists(a.f)) {
      Shared from_file = io;
      from_file.input = a.f;
      const auto j = read_json(from_file);
      spec.f = j.contains("A_f") ? candidate_from_json(j).f : function_from_json(j);
    } else {
      spec.f = from_anf(a.k, a.f);
    }
    spec.f_source = FSource::given;
  }
  if (!a.f_source.empty()) spec.f_source = parse_f_source(a.f_source);
  if (spec.f_source == FSource::given && !spec.f) throw UsageError("--f-source given needs --f");
  const auto out = search_codes(spec);
  std::string lines;
  for (const auto& cert : out.certificates) lines += certificate_to_json(cert).dump() + "\n";
  write_all(io, lines);
  const json summary{{"status", to_string(out.status)},  {"nodes", out.nodes},
                     {"functions_tried", out.functions_tried}, {"solutions", out.solutions},
                     {"complete", out.complete},           {"message", out.message}};
  std::cerr << summary.dump() << "\n";
  switch (out.status) {
    case SearchStatus::found: return 0;
    case SearchStatus::rejected: return 2;
    default: return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boolean-function construction and certification of quantum codes"};
  app.require_subcommand(1);
  app.fallthrough();
  Shared io;
  app.add_option("-i,--input", io.input, "input file, '-' for stdin")->capture_default_str();
  app.add_option("-o,--output", io.output, "output file, '-' for stdout")->capture_default_str();
  app.add_option("--format", io.format, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
  app.add_option("-j,--jobs", io.jobs, "worker threads (default: QECC_FORGE_JOBS or hardware)");

  int code = 0;
  FunctionArgs fa;
  for (auto [name, help, fn] : {std::tuple{"cset", "complementary set of f", &run_cset},
                                std::tuple{"autocorr", "autocorrelation spectrum of f", &run_autocorr},
                                std::tuple{"anf", "algebraic normal form of f", &run_anf}}) {
    auto* cmd = app.add_subcommand(name, help);
    add_function_args(cmd, fa);
    cmd->callback([&, fn = fn] { code = fn(io, fa); });
  }

  unsigned vd = 0;
  bool all_failures = false, transcript = false;
  auto* verify_cmd = app.add_subcommand("verify", "check a bundle against the two code conditions");
  verify_cmd->add_option("--d", vd, "distance to certify (default: the bundle's d)");
  verify_cmd->add_flag("--all-failures", all_failures, "report every failing error");
  verify_cmd->add_flag("--transcript", transcript, "include the full error transcript");
  verify_cmd->callback([&] { code = run_verify(io, vd, all_failures, transcript); });

  app.add_subcommand("build-projector", "exact projector P_f of a bundle")->callback([&] {
    code = run_build_projector(io);
  });

  unsigned od = 0;
  auto* oracle_cmd = app.add_subcommand("distance-oracle", "check P E P = 0 for all errors of weight < d");
  oracle_cmd->add_option("--d", od, "distance")->required();
  oracle_cmd->callback([&] { code = run_distance_oracle(io, od); });

  std::string family;
  unsigned fm = 0;
  auto* family_cmd = app.add_subcommand("family", "emit a built-in code family member");
  family_cmd->add_option("name", family, "additive_2m | nonadditive_2m | rains_5_6_2 | rains_ext_2m1 | laflamme_5_2_3")
      ->required();
  family_cmd->add_option("--m", fm, "family parameter");
  family_cmd->callback([&] { code = run_family(io, family, fm); });

  unsigned times = 1;
  auto* extend_cmd = app.add_subcommand("extend", "((k,M,2)) -> ((k+2,4M,2))");
  extend_cmd->add_option("--times", times, "number of extension steps")->capture_default_str();
  extend_cmd->callback([&] { code = run_extend(io, times); });

  std::optional<std::uint64_t> drop, target;
  auto* shrink_cmd = app.add_subcommand("shrink", "remove support points of f");
  shrink_cmd->add_option("--drop", drop, "support point to remove");
  shrink_cmd->add_option("--M", target, "remove largest support points until wt(f) = M");
  shrink_cmd->callback([&] { code = run_shrink(io, drop, target); });

  unsigned s = 0, t = 0, qd = 0;
  std::string matrix_level = "auto";
  auto* oqec_cmd = app.add_subcommand("oqec", "operator (subsystem) code from a bundle's matrix");
  oqec_cmd->add_option("--s", s, "f = v_k ... v_{s+1}")->required();
  oqec_cmd->add_option("--t", t, "logical qubits")->required();
  oqec_cmd->add_option("--d", qd, "distance (default: the bundle's d)");
  oqec_cmd->add_option("--matrix-level", matrix_level, "auto | on | off")
      ->check(CLI::IsMember({"auto", "on", "off"}))
      ->capture_default_str();
  oqec_cmd->callback([&] { code = run_oqec(io, s, t, qd, matrix_level); });

  SearchArgs sa;
  auto* search_cmd = app.add_subcommand("search", "search for (f, A_f) pairs; certificates as JSON lines");
  search_cmd->add_option("--k", sa.k, "qubits")->required();
  search_cmd->add_option("--M", sa.M, "weight of f")->required();
  search_cmd->add_option("--d", sa.d, "distance")->capture_default_str();
  search_cmd->add_option("--mode", sa.mode, "first | count | exhaustive")
      ->check(CLI::IsMember({"first", "count", "exhaustive"}))
      ->capture_default_str();
  search_cmd->add_option("--budget", sa.budget, "node limit per column search")->capture_default_str();
  search_cmd->add_option("--seed", sa.seed, "seed for --f-source random")->capture_default_str();
  search_cmd->add_option("--f", sa.f, "bundle/function JSON file or ANF expression");
  search_cmd->add_option("--f-source", sa.f_source, "given | monomials | enumerate | random")
      ->check(CLI::IsMember({"given", "monomials", "enumerate", "random"}));
  search_cmd->add_option("--restarts", sa.restarts, "functions drawn by --f-source random")->capture_default_str();
  search_cmd->callback([&] { code = run_search(io, sa); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "malformed JSON: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "parse error at position " << e.position() << ": " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "out of range: " << e.what() << "\n";
    return 2;
  } catch (const OverflowError& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    return 2;
  }
  return code;
}
