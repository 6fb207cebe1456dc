#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "hgm/corpus.hpp"
#include "hgm/count.hpp"
#include "hgm/io.hpp"
#include "hgm/oracle.hpp"
#include "hgm/selftest.hpp"

namespace {

using hgm::io::json;

enum ExitCode { kOk = 0, kParse = 1, kDomain = 2, kMismatch = 3, kInternal = 4 };

// Malformed command-line values; reported with exit code 1.
struct ParseFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& text, char sep = ',') {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  if (text.empty() || text.back() == sep) out.push_back("");
  return out;
}

long long parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw ParseFailure(what + ": '" + s + "' is not an integer");
  return v;
}

std::vector<long long> parse_ints(const std::string& text, const std::string& what) {
  std::vector<long long> out;
  for (auto& s : split(text)) out.push_back(parse_int(s, what));
  return out;
}

std::vector<std::string> parse_fractions(const std::string& text, const std::string& what) {
  auto out = split(text);
  for (auto& s : out) {
    try {
      hgm::parse_rational(s);
    } catch (const std::exception&) {
      throw ParseFailure(what + ": '" + s + "' is not a fraction");
    }
  }
  return out;
}

// "gamma;delta;N", e.g. "-1,-1,1,1;1,-1,0,0;3".
hgm::GammaTriple parse_triple(const std::string& text) {
  const auto parts = split(text, ';');
  if (parts.size() != 3) throw ParseFailure("--triple expects 'gamma;delta;N'");
  return {parse_ints(parts[0], "--triple gamma"), parse_ints(parts[1], "--triple delta"),
          parse_int(parts[2], "--triple N")};
}

hgm::Element parse_element(const hgm::FiniteField& f, const std::string& text, const std::string& what) {
  if (text.find(':') != std::string::npos) {
    std::vector<std::uint32_t> digits;
    for (auto& s : split(text, ':')) {
      const auto v = parse_int(s, what);
      if (v < 0) throw ParseFailure(what + ": digits must be nonnegative");
      digits.push_back(static_cast<std::uint32_t>(v));
    }
    return f.from_digits(digits);
  }
  const auto v = parse_int(text, what);
  hgm::detail::require(v >= 0 && static_cast<std::uint64_t>(v) < f.q(),
                       what + " = " + std::to_string(v) + " is not a field element code in [0, q)");
  return static_cast<hgm::Element>(v);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseFailure("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseFailure(path + ": " + e.what());
  }
}

hgm::LaurentHypersurface read_hypersurface(const std::string& path) {
  const json j = read_json_file(path);
  try {
    return hgm::io::hypersurface_from_json(j);
  } catch (const json::exception& e) {
    throw ParseFailure(path + ": " + e.what());
  }
}

json report(const std::string& command) { return {{"schema", hgm::io::kReportSchema}, {"command", command}}; }

struct Common {
  unsigned jobs = 1;
  std::optional<std::uint64_t> budget;
  hgm::OracleOptions oracle() const {
    hgm::OracleOptions o;
    if (budget) o.budget = *budget;
    o.jobs = jobs;
    return o;
  }
};

struct HypersumArgs {
  std::string gamma, delta, alpha, beta, t;
  long long N = 1;
  std::uint64_t q = 0;
};

int cmd_hypersum(const HypersumArgs& a) {
  const auto gt = hgm::GaussTable::of_order(a.q);
  const auto& f = gt.field();
  const hgm::Element t = parse_element(f, a.t, "--t");
  hgm::detail::require(t != 0, "t must be nonzero");
  json out = report("hypersum");
  if (!a.gamma.empty()) {
    if (!a.alpha.empty() || !a.beta.empty()) throw ParseFailure("give either --gamma or --alpha/--beta, not both");
    const auto gamma = parse_ints(a.gamma, "--gamma");
    const auto delta = a.delta.empty() ? std::vector<long long>(gamma.size(), 0) : parse_ints(a.delta, "--delta");
    const hgm::GammaTriple triple{gamma, delta, a.N};
    hgm::validate(triple);
    hgm::detail::require(hgm::coprime_to_gamma(gamma, a.q), "q = " + std::to_string(a.q) + " is not coprime to gamma");
    hgm::detail::require(hgm::triple_defined_at(triple, a.q),
                         "delta (q-1)/N is not integral at q = " + std::to_string(a.q));
    hgm::HypergeometricValue v{hgm::f_triple(triple, gt, t), gt.q(), t, hgm::Definition::Triple,
                               hgm::params_from_triple(triple), triple};
    out["result"] = hgm::io::to_json(v, f);
  } else {
    if (a.alpha.empty() || a.beta.empty()) throw ParseFailure("--gamma or both --alpha and --beta are required");
    const auto params =
        hgm::HypergeometricParams::parse(parse_fractions(a.alpha, "--alpha"), parse_fractions(a.beta, "--beta"));
    out["result"] = hgm::io::to_json(hgm::f_extended(params, gt, t), f);
  }
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_params(const std::string& gamma, const std::string& delta, long long N) {
  const auto g = parse_ints(gamma, "--gamma");
  const hgm::GammaTriple t{g, delta.empty() ? std::vector<long long>(g.size(), 0) : parse_ints(delta, "--delta"), N};
  json out = report("params");
  out["input"] = hgm::io::to_json(t);
  out["result"] = hgm::io::to_json(hgm::params_from_triple(t));
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_triple(const std::string& alpha, const std::string& beta) {
  const auto p = hgm::HypergeometricParams::parse(parse_fractions(alpha, "--alpha"), parse_fractions(beta, "--beta"));
  json out = report("triple");
  out["input"] = hgm::io::to_json(p);
  out["result"] = hgm::io::to_json(hgm::triple_from_params(p));
  json alternatives = json::array();
  for (auto& t : hgm::representing_triples(p)) alternatives.push_back(hgm::io::to_json(t));
  out["representations"] = alternatives;
  std::cout << out.dump(2) << '\n';
  return kOk;
}

json verification(long long formula, long long oracle, const json& detail) {
  return {{"formula", formula}, {"oracle", oracle}, {"match", formula == oracle}, {"oracle_detail", detail}};
}

struct CountArgs {
  std::string input, compactification = "I", triple, t;
  std::uint64_t q = 0;
  bool verify = false;
};

int cmd_count(const CountArgs& a, const Common& common) {
  json out = report("count");
  out["compactification"] = a.compactification;
  bool match = true;
  if (a.compactification == "cover") {
    if (a.triple.empty() || a.q == 0 || a.t.empty()) throw ParseFailure("cover counts need --triple, --q and --t");
    const auto triple = parse_triple(a.triple);
    const auto gt = hgm::GaussTable::of_order(a.q);
    const hgm::Element t = parse_element(gt.field(), a.t, "--t");
    const auto c = hgm::count_cyclic_cover(triple, gt, t);
    out["input"] = {{"triple", hgm::io::to_json(triple)}, {"q", a.q}, {"t", hgm::io::element_to_json(gt.field(), t)}};
    out["result"] = hgm::io::to_json(c);
    if (a.verify) {
      const auto b = hgm::bf_compact_II(hgm::cyclic_cover_hypersurface(triple, gt.field(), t), common.oracle());
      out["verify"] = verification(c.rounded, b.total, hgm::io::to_json(b));
      match = c.rounded == b.total;
    }
  } else {
    if (a.input.empty()) throw ParseFailure("--input is required for compactification " + a.compactification);
    const auto h = read_hypersurface(a.input);
    const auto gt = hgm::GaussTable::of_order(h.field.q());
    const auto g = hgm::analyze(h);
    out["input"] = hgm::io::to_json(h);
    hgm::CountResult c;
    std::optional<hgm::StratifiedCount> b;
    if (a.compactification == "I") {
      c = hgm::count_compact_I(g, gt);
      if (a.verify) b = hgm::bf_compact_I(h, common.oracle());
    } else if (a.compactification == "II") {
      c = hgm::count_compact_II(g, gt);
      if (a.verify) b = hgm::bf_compact_II(h, common.oracle());
    } else {
      c = hgm::count_stratum(g, gt, {});
      if (a.verify) {
        const auto n = hgm::bf_torus(h, common.oracle());
        b = hgm::StratifiedCount{{{"interior", n}}, n};
      }
    }
    out["result"] = hgm::io::to_json(c);
    if (b) {
      out["verify"] = verification(c.rounded, b->total, hgm::io::to_json(*b));
      match = c.rounded == b->total;
    }
  }
  std::cout << out.dump(2) << '\n';
  if (!match) {
    std::cerr << "hgm: formula and brute-force counts differ\n";
    return kMismatch;
  }
  return kOk;
}

int cmd_dwork(std::size_t d, std::uint64_t q, const std::string& u_text, bool verify, const Common& common) {
  const auto gt = hgm::GaussTable::of_order(q);
  const hgm::Element u = parse_element(gt.field(), u_text, "--u");
  const auto c = hgm::dwork_count({d, u}, gt);
  json out = report("dwork");
  out["input"] = {{"d", d}, {"q", q}, {"u", hgm::io::element_to_json(gt.field(), u)}};
  out["result"] = hgm::io::to_json(c);
  bool match = true;
  if (verify) {
    const auto b = hgm::bf_projective_dwork(d, gt.field(), u, common.oracle());
    out["verify"] = verification(c.rounded, b, json::object());
    match = c.rounded == b;
  }
  std::cout << out.dump(2) << '\n';
  if (!match) {
    std::cerr << "hgm: formula and brute-force counts differ\n";
    return kMismatch;
  }
  return kOk;
}

int cmd_gale(const std::string& input) {
  const auto h = read_hypersurface(input);
  const auto g = hgm::analyze(h);
  json out = report("gale");
  out["input"] = hgm::io::to_json(h);
  json result = hgm::io::to_json(g);
  json faces = json::array();
  for (auto& f : hgm::faces(g)) faces.push_back({{"S", f.S}, {"dim", f.dim}});
  result["faces"] = faces;
  result["fan"] = hgm::io::to_json(hgm::check_staircase_fan(g));
  if (g.degree % g.field.p() != 0) {
    const auto reg = hgm::delta_regularity(g);
    result["regularity"] = {{"delta_regular", reg.kind == hgm::Regularity::Smooth},
                            {"double_points", hgm::detail::to_ll(reg.double_points)}};
  }
  out["result"] = result;
  std::cout << out.dump(2) << '\n';
  return kOk;
}

int cmd_selftest(const Common& common) {
  hgm::AcceptanceOptions opts;
  opts.jobs = common.jobs;
  const auto results = hgm::run_acceptance(std::cerr, opts);
  json out = report("selftest");
  json items = json::array();
  bool all = true;
  for (auto& r : results) {
    items.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seconds", r.seconds}});
    all = all && r.pass;
  }
  out["result"] = {{"criteria", items}, {"pass", all}};
  std::cout << out.dump(2) << '\n';
  return all ? kOk : kMismatch;
}

int cmd_corpus(std::uint64_t seed) {
  json out = report("corpus");
  json items = json::array();
  for (auto& e : hgm::desk_corpus(seed)) items.push_back({{"name", e.name}, {"hypersurface", hgm::io::to_json(e.h)}});
  out["seed"] = seed;
  out["result"] = items;
  std::cout << out.dump(2) << '\n';
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite hypergeometric sums and toric point counts"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--jobs", common.jobs, "Worker threads for brute-force counts")->check(CLI::Range(1u, 256u));

  HypersumArgs hs;
  auto* hypersum = app.add_subcommand("hypersum", "Evaluate a finite hypergeometric sum");
  hypersum->add_option("--gamma", hs.gamma, "Gamma vector, comma separated");
  hypersum->add_option("--delta", hs.delta, "Twist vector (default zero)");
  hypersum->add_option("--N", hs.N, "Cyclotomic level")->check(CLI::PositiveNumber);
  hypersum->add_option("--alpha", hs.alpha, "Numerator parameters, e.g. 1/3,2/3");
  hypersum->add_option("--beta", hs.beta, "Denominator parameters");
  hypersum->add_option("--q", hs.q, "Field size")->required();
  hypersum->add_option("--t", hs.t, "Argument: element code or colon-separated digits")->required();

  std::string pg, pd;
  long long pN = 1;
  auto* params = app.add_subcommand("params", "Hypergeometric parameters of a gamma triple");
  params->add_option("--gamma", pg)->required();
  params->add_option("--delta", pd);
  params->add_option("--N", pN)->check(CLI::PositiveNumber);

  std::string ta, tb;
  auto* triple = app.add_subcommand("triple", "Gamma triple representing hypergeometric parameters");
  triple->add_option("--alpha", ta)->required();
  triple->add_option("--beta", tb)->required();

  CountArgs ca;
  std::uint64_t budget = 0;
  auto* count = app.add_subcommand("count", "Point count via the character-sum formulas");
  count->add_option("--input", ca.input, "Hypersurface JSON file");
  count->add_option("--compactification", ca.compactification)
      ->check(CLI::IsMember({"I", "II", "torus", "cover"}));
  count->add_option("--triple", ca.triple, "Cyclic cover triple as 'gamma;delta;N'");
  count->add_option("--q", ca.q, "Field size for cyclic covers");
  count->add_option("--t", ca.t, "Parameter for cyclic covers");
  count->add_flag("--verify", ca.verify, "Compare against brute-force enumeration");
  count->add_option("--budget", budget, "Enumeration budget in field operations")->check(CLI::PositiveNumber);

  std::size_t dd = 2;
  std::uint64_t dq = 0;
  std::string du;
  bool dverify = false;
  auto* dwork = app.add_subcommand("dwork", "Point count of the Dwork pencil");
  dwork->add_option("--d", dd)->required()->check(CLI::Range(2, 12));
  dwork->add_option("--q", dq)->required();
  dwork->add_option("--u", du)->required();
  dwork->add_flag("--verify", dverify);
  dwork->add_option("--budget", budget)->check(CLI::PositiveNumber);

  std::string gi;
  auto* gale = app.add_subcommand("gale", "Gale data, faces and fan summary of a hypersurface");
  gale->add_option("--input", gi)->required();

  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  std::uint64_t seed = 20240601;
  auto* corpus = app.add_subcommand("corpus", "Print the random test hypersurface corpus");
  corpus->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kParse;
  }
  if (budget) common.budget = budget;

  try {
    if (*hypersum) return cmd_hypersum(hs);
    if (*params) return cmd_params(pg, pd, pN);
    if (*triple) return cmd_triple(ta, tb);
    if (*count) return cmd_count(ca, common);
    if (*dwork) return cmd_dwork(dd, dq, du, dverify, common);
    if (*gale) return cmd_gale(gi);
    if (*selftest) return cmd_selftest(common);
    if (*corpus) return cmd_corpus(seed);
  } catch (const ParseFailure& e) {
    std::cerr << "hgm: " << e.what() << '\n';
    return kParse;
  } catch (const hgm::DomainError& e) {
    std::cerr << "hgm: " << e.what() << '\n';
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "hgm: internal error: " << e.what() << '\n';
    return kInternal;
  }
  return kParse;
}
