#include <chrono>
#include <cmath>
#include <stdexcept>

#include "hlp/classical.hpp"
#include "hlp/compop.hpp"
#include "hlp/error.hpp"
#include "hlp/haagerup.hpp"
#include "hlp/superoperator.hpp"
#include "hlp/vnops.hpp"
#include "hlp_cli/app.hpp"
#include "hlp_cli/spec_file.hpp"
#include "report_util.hpp"

namespace hlp::cli {

namespace {

/// A well-formed request the theory declines to answer (e.g. q > p).
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Result {
  Report tolerances = Report::object();
  Report results = Report::object();
  std::string status = "PASS";
  int exit_code = kExitOk;

  void verdict(bool pass, const char* yes = "PASS", const char* no = "FAIL") {
    status = pass ? yes : no;
    exit_code = pass ? kExitOk : kExitRefused;
  }
};

Exponent resolve(const std::optional<std::string>& flag, const std::optional<Exponent>& from_spec, const char* name) {
  if (flag) {
    try {
      return Exponent::parse(*flag);
    } catch (const Error& e) {
      throw InputError(std::string("--") + name, e.what());
    }
  }
  if (from_spec) return *from_spec;
  throw InputError(std::string("exponents.") + name, std::string("missing; pass --") + name + " or set it in the spec");
}

ExponentTriple ordered_pair(const Exponent& p, const Exponent& q) {
  if (p < q) {
    throw Refusal("q = " + q.to_string() + " exceeds p = " + p.to_string() +
                  ": excluded regime, composition operators L^p -> L^q are only defined here for q <= p");
  }
  return ExponentTriple::from_pq(p, q);
}

NormOptions norm_options(const Options& o) {
  if (o.restarts < 1) throw InputError("--restarts", "must be at least 1");
  NormOptions n;
  n.restarts = o.restarts;
  n.seed = o.seed;
  return n;
}

void norm_tolerances(Report& t, const NormOptions& n) {
  t["restarts"] = n.restarts;
  t["max_iter"] = n.max_iter;
  t["gain_tol"] = num(n.gain_tol);
}

Report estimate(const NormEstimate& e) {
  return {{"lower_bound", num(e.lower_bound)},
          {"certified", e.certified},
          {"iterations", e.iterations},
          {"restarts", e.restarts}};
}

// One full-size tile per target block and each source block used once.
bool is_isomorphism(const JordanMorphismSpec& j) {
  if (j.src().block_count() != j.dst().block_count() || j.tiles().size() != j.src().block_count()) return false;
  std::vector<int> src_hits(j.src().block_count(), 0);
  std::vector<int> dst_hits(j.dst().block_count(), 0);
  for (const Tile& t : j.tiles()) {
    if (j.src().dim(t.src_block) != j.dst().dim(t.dst_block)) return false;
    ++src_hits[t.src_block];
    ++dst_hits[t.dst_block];
  }
  for (int h : src_hits) {
    if (h != 1) return false;
  }
  for (int h : dst_hits) {
    if (h != 1) return false;
  }
  return true;
}

void cmd_check_jordan(const SpecFile& spec, const Options& o, Result& r) {
  if (o.samples < 1) throw InputError("--samples", "must be at least 1");
  const JordanReport rep = verify_jordan(spec.need_morphism(), o.samples, o.seed);
  r.tolerances["jordan_relative"] = num(1e-9);
  r.results = {{"pass", rep.pass},
               {"samples", rep.samples},
               {"adjoint_residual", num(rep.adjoint_residual)},
               {"square_residual", num(rep.square_residual)},
               {"linearity_residual", num(rep.linearity_residual)},
               {"max_residual", num(rep.max_residual)},
               {"witness", block_matrix(rep.witness)}};
  r.verdict(rep.pass);
}

void cmd_norm(const SpecFile& spec, const Options& o, Result& r) {
  const ExponentTriple triple = ordered_pair(resolve(o.p, spec.p, "p"), resolve(o.q, spec.q, "q"));
  const JordanMorphismSpec& j = spec.need_morphism();
  const Weight& w1 = spec.need_weight1();
  const Weight& w2 = spec.need_weight2();
  const NormOptions n = norm_options(o);
  const SuperOperator c = build_composition(j, w1, w2, triple.p, triple.q);
  const NormEstimate e = operator_norm(c, n);
  norm_tolerances(r.tolerances, n);
  r.tolerances["bound_slack"] = num(1e-6);
  r.results = {{"p", exponent(triple.p)}, {"q", exponent(triple.q)}, {"r", exponent(triple.r)}};
  r.results["norm"] = estimate(e);
  bool pass = true;
  if (is_isomorphism(j)) {
    // C_J is the change of weights to phi2 o J followed by an isometry.
    const Weight k = pushforward_density(j, w2);
    const double bound = change_of_weights_bound(w1, k, triple.p, triple.q);
    pass = e.lower_bound <= bound + 1e-6;
    r.results["upper_bound"] = num(bound);
    r.results["within_bound"] = pass;
  } else {
    r.results["upper_bound"] = nullptr;
    r.results["upper_bound_note"] = "available for *-isomorphisms and *-anti-isomorphisms only";
  }
  r.verdict(pass);
}

void cmd_classify(const SpecFile& spec, const Options& o, Result& r) {
  const Exponent p = resolve(o.p, spec.p, "p");
  const Exponent q = resolve(o.q, spec.q, "q");
  const SuperOperator s =
      SuperOperator::from_matrix(spec.need_algebra1(), p, spec.need_algebra2(), q, spec.need_superoperator());
  const Classification c = classify_characteristic_preserving(s, spec.need_weight1(), spec.need_weight2(), p, q, o.seed);
  r.tolerances["projection"] = num(1e-7);
  r.tolerances["jordan_relative"] = num(1e-9);
  r.tolerances["reconstruction"] = num(1e-8);
  r.results = {{"verdict", to_string(c.verdict)},
               {"p", exponent(p)},
               {"q", exponent(q)},
               {"projection_residual", num(c.projection_residual)},
               {"jordan_residual", num(c.jordan.max_residual)},
               {"reconstruction_residual", num(c.reconstruction_residual)}};
  if (!c.reason.empty()) r.results["reason"] = c.reason;
  if (c.morphism) {
    r.results["morphism"] = tiles(*c.morphism);
  } else {
    r.results["witness"] = block_matrix(c.witness);
  }
  r.verdict(c.verdict == Verdict::Accept, "ACCEPT", "REJECT");
}

void cmd_change_of_weights(const SpecFile& spec, const Options& o, Result& r) {
  const ExponentTriple triple = ordered_pair(resolve(o.p, spec.p, "p"), resolve(o.q, spec.q, "q"));
  const Weight& h = spec.need_weight1();
  const Weight& k = spec.need_weight2();
  const NormOptions n = norm_options(o);
  const ChangeOfWeights cw = change_of_weights(h, k, triple.p, triple.q, n);
  norm_tolerances(r.tolerances, n);
  r.tolerances["bound_slack"] = num(1e-6);
  r.results = {{"p", exponent(triple.p)},
               {"q", exponent(triple.q)},
               {"r", exponent(triple.r)},
               {"d", block_matrix(cw.d)},
               {"bound", num(cw.bound)},
               {"norm", estimate(cw.measured)},
               {"within_bound", cw.within_bound}};
  bool pass = cw.within_bound;
  if (o.r) {
    Exponent ratio;
    try {
      ratio = Exponent::parse(*o.r);
    } catch (const Error& e) {
      throw InputError("--r", e.what());
    }
    if (ratio.is_infinite() || !ratio.exact_inverse()) throw InputError("--r", "ratio p/q must be a finite decimal");
    const Rational rho = Rational(1) / *ratio.exact_inverse();
    std::vector<std::pair<Exponent, Exponent>> pairs;
    for (const Rational& qv : {Rational(1), Rational(3, 2), Rational(2), Rational(3)}) {
      const Rational pv = rho * qv;
      pairs.emplace_back(Exponent::rational(pv.num(), pv.den()), Exponent::rational(qv.num(), qv.den()));
    }
    if (rho == Rational(1)) pairs.emplace_back(Exponent::infinity(), Exponent::infinity());
    Report scale = Report::array();
    for (const ScaleEntry& e : change_of_weights_scale(h, k, rho, pairs, n)) {
      scale.push_back({{"p", exponent(e.p)},
                       {"q", exponent(e.q)},
                       {"bound", num(e.bound)},
                       {"measured", num(e.measured)},
                       {"pass", e.pass}});
      pass = pass && e.pass;
    }
    r.results["scale"] = {{"ratio", *o.r}, {"pairs", std::move(scale)}};
  }
  r.verdict(pass);
}

void cmd_classical(const SpecFile& spec, const Options& o, Result& r) {
  const ExponentTriple triple = ordered_pair(resolve(o.p, spec.p, "p"), resolve(o.q, spec.q, "q"));
  const MeasureSection& m = spec.need_measure();
  const NormOptions n = norm_options(o);
  const ClassicalOperator op = build_classical(m.map, m.space1, m.space2, triple.p, triple.q, n);
  norm_tolerances(r.tolerances, n);
  r.tolerances["bound_slack"] = num(1e-9);
  r.tolerances["pipeline"] = num(1e-10);
  r.tolerances["diagonal_consistency"] = num(1e-9);
  r.results = {{"p", exponent(triple.p)},
               {"q", exponent(triple.q)},
               {"r", exponent(op.criterion.r)},
               {"f_J", num_list(op.criterion.f)},
               {"norm_f", num(op.criterion.norm_f)},
               {"bound", num(op.criterion.bound)},
               {"exact_norm", num(op.exact_norm)},
               {"norm", estimate(op.measured)},
               {"within_bound", op.within_bound}};
  bool pass = op.within_bound;
  try {
    const Pipeline pl = five_step_pipeline(m.map, m.space1, m.space2, triple.p, triple.q);
    Report blocks = Report::array();
    for (const auto& b : pl.sigma_t.blocks) blocks.push_back(b);
    r.results["pipeline"] = {{"steps", pl.names},
                             {"z", pl.z},
                             {"y", pl.y},
                             {"sigma_t", std::move(blocks)},
                             {"composite_residual", num(pl.composite_residual)},
                             {"isometry_residual", num(pl.isometry_residual)}};
    pass = pass && pl.composite_residual < 1e-10;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::EmptySupport) throw;
    r.results["pipeline"] = {{"skipped", "empty support: T has empty domain, the operator is zero"}};
  }
  const DiagonalConsistency dc = diagonal_consistency(m.map, m.space1, m.space2, triple.p, triple.q);
  r.results["diagonal_consistency"] = {{"residual", num(dc.residual)}, {"agree", dc.agree}};
  r.verdict(pass && dc.agree);
}

void cmd_modular(const SpecFile& spec, const Options& o, Result& r) {
  const Weight& w = spec.need_weight1();
  r.tolerances["commutator_relative"] = num(1e-9);
  r.tolerances["orbit_relative"] = num(1e-8);
  r.results["t"] = num_list(o.t);
  if (spec.weight2) {
    const WeightCommutation wc = weight_commutation(w, *spec.weight2);
    r.results["weights_commute"] = wc.commute;
    r.results["support_commutator"] = num(wc.support_commutator);
    r.results["density_commutator"] = num(wc.density_commutator);
  }
  if (spec.element) {
    const BlockMatrix& a = *spec.element;
    Report orbit = Report::array();
    for (double t : o.t) {
      const BlockMatrix s = modular_conjugate(w, t, a);
      orbit.push_back({{"t", num(t)}, {"deviation", num((s - a).frobenius())}, {"conjugate", block_matrix(s)}});
    }
    r.results["orbit"] = std::move(orbit);
    const CentralizerReport c = in_centralizer(w, a, o.t);
    r.results["centralizer"] = {{"commutator_verdict", c.in_centralizer},
                                {"orbit_verdict", c.orbit_fixed},
                                {"commutator_norm", num(c.commutator_norm)},
                                {"orbit_deviation", num(c.orbit_deviation)},
                                {"agree", c.agree()}};
  }
  if (!spec.weight2 && !spec.element) throw InputError("weight2", "modular needs weight2 and/or element");
  r.verdict(true);
}

bool is_input_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::ProfileMismatch:
    case ErrorCode::NotHermitian:
    case ErrorCode::NotPSD:
    case ErrorCode::BadExponent:
    case ErrorCode::TooLarge:
      return true;
    default:
      return false;
  }
}

Report arguments(const Options& o) {
  Report a{{"spec", o.spec_path}};
  if (o.p) a["p"] = *o.p;
  if (o.q) a["q"] = *o.q;
  if (o.r) a["r"] = *o.r;
  a["restarts"] = o.restarts;
  a["samples"] = o.samples;
  a["t"] = num_list(o.t);
  return a;
}

}  // namespace

Outcome run(const Options& options, const std::string& spec_text) {
  const auto start = std::chrono::steady_clock::now();
  Report args = arguments(options);
  Result r;
  Report warnings = Report::array();
  Report error;
  try {
    const SpecFile spec = parse_spec(spec_text);
    for (const auto& s : spec.unknown_sections) warnings.push_back("unknown section '" + s + "' ignored");
    const std::string& c = options.command;
    if (c == "check-jordan") {
      cmd_check_jordan(spec, options, r);
    } else if (c == "norm") {
      cmd_norm(spec, options, r);
    } else if (c == "classify") {
      cmd_classify(spec, options, r);
    } else if (c == "change-of-weights") {
      cmd_change_of_weights(spec, options, r);
    } else if (c == "classical") {
      cmd_classical(spec, options, r);
    } else if (c == "modular") {
      cmd_modular(spec, options, r);
    } else {
      throw InputError("command", "unknown command '" + c + "'");
    }
  } catch (const InputError& e) {
    r.status = "INPUT_ERROR";
    r.exit_code = kExitInput;
    error = {{"kind", "input"}, {"field", e.field()}, {"message", e.what()}};
  } catch (const Refusal& e) {
    r.status = "REFUSED";
    r.exit_code = kExitRefused;
    error = {{"kind", "refusal"}, {"message", e.what()}};
  } catch (const Error& e) {
    const bool input = is_input_code(e.code());
    r.status = input ? "INPUT_ERROR" : "REFUSED";
    r.exit_code = input ? kExitInput : kExitRefused;
    error = {{"kind", input ? "input" : "refusal"}, {"code", std::string(to_string(e.code()))}, {"message", e.what()}};
  }
  if (r.exit_code != kExitOk && r.status != "FAIL" && r.status != "REJECT") r.results = Report::object();

  Outcome out;
  out.exit_code = r.exit_code;
  Report& rep = out.report;
  rep["command"] = options.command;
  rep["arguments"] = args;
  rep["inputs_digest"] = "fnv1a64:" + fnv1a_hex(spec_text + '\0' + options.command + '\0' + args.dump());
  rep["seed"] = options.seed;
  rep["status"] = r.status;
  rep["exit_code"] = r.exit_code;
  rep["tolerances"] = r.tolerances;
  rep["results"] = r.results;
  if (!error.is_null()) rep["error"] = error;
  rep["warnings"] = warnings;
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  rep["wall_time_s"] = num(elapsed.count());
  return out;
}

}  // namespace hlp::cli
