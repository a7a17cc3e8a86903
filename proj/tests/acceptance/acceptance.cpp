// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "hlp/classical.hpp"
#include "hlp/compop.hpp"
#include "hlp/error.hpp"
#include "hlp/haagerup.hpp"
#include "hlp/jordan.hpp"
#include "hlp/random.hpp"
#include "hlp/superoperator.hpp"
#include "hlp/vnops.hpp"
#include "oracles.hpp"

#ifdef HLP_HAVE_CLI
#include "hlp_cli/app.hpp"
#endif

using namespace hlp;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Check {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> run;
};

const Exponent kOne = Exponent::rational(1);
const Exponent kTwo = Exponent::rational(2);
const Exponent kThree = Exponent::rational(3);
const Exponent kInf = Exponent::infinity();

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

BlockProfile random_profile(Rng& rng, int max_first, int max_second) {
  std::uniform_int_distribution<int> first(1, max_first);
  std::uniform_int_distribution<int> second(0, max_second);
  std::vector<int> dims{first(rng)};
  if (const int d = second(rng); d > 0) dims.push_back(d);
  return BlockProfile(dims);
}

BlockMatrix random_self_adjoint(Rng& rng, const BlockProfile& p) { return random_hermitian(rng, p); }

// --- 1 ----------------------------------------------------------------------

Outcome holder_suite() {
  Rng rng(101);
  struct Triple {
    Exponent p, q;
  };
  const std::vector<Triple> fixed{{kTwo, kOne}, {kThree, Exponent::rational(3, 2)}, {Exponent::rational(4), kTwo}};
  const std::vector<Exponent> tail{kOne, Exponent::rational(3, 2), kTwo, kThree};
  int violations = 0;
  double worst_slack = std::numeric_limits<double>::infinity();
  double oracle_error = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const BlockProfile prof = random_profile(rng, 4, 3);
    const ExponentTriple t = (i % 4 < 3) ? ExponentTriple::from_pq(fixed[i % 4].p, fixed[i % 4].q)
                                         : ExponentTriple::from_pq(kInf, tail[(i / 4) % tail.size()]);
    const LpElement x{random_element(rng, prof), t.p};
    const LpElement y{random_element(rng, prof), t.r};
    const HolderSides s = holder_check(x, y, t);
    if (s.lhs > s.rhs + 1e-9) ++violations;
    worst_slack = std::min(worst_slack, s.rhs - s.lhs);
    const double lhs = oracle::schatten(x.x * y.x, t.q.value());
    const double rhs = oracle::schatten(x.x, t.p.value()) * oracle::schatten(y.x, t.r.value());
    oracle_error = std::max(oracle_error, std::max(std::abs(lhs - s.lhs), std::abs(rhs - s.rhs)) / std::max(1.0, rhs));
  }
  return {violations == 0 && oracle_error < 1e-9,
          "1000 instances, violations " + std::to_string(violations) + ", min slack " + fmt("%.3g", worst_slack) +
              ", oracle deviation " + fmt("%.2g", oracle_error)};
}

// --- 2 ----------------------------------------------------------------------

Outcome change_of_weights_sandwich() {
  const BlockProfile m2{2};
  const ChangeOfWeights example = change_of_weights(Weight(BlockMatrix::diagonal(m2, {0.5, 0.5})),
                                                    Weight(BlockMatrix::diagonal(m2, {0.8, 0.2})), kTwo, kOne);
  // commuting diagonal densities: |d|^2 = diag(0.8 sqrt2, 0.2 sqrt2), r = 2
  const double scalar = std::hypot(0.8 * std::sqrt(2.0), 0.2 * std::sqrt(2.0));
  bool pass = std::abs(example.bound - 1.166190) <= 1e-6 && std::abs(example.bound - scalar) < 1e-12 &&
              example.measured.lower_bound <= example.bound + 1e-6;

  Rng rng(202);
  const std::vector<std::pair<Exponent, Exponent>> pairs{
      {kTwo, kOne}, {kThree, Exponent::rational(3, 2)}, {Exponent::rational(4), kTwo}, {kTwo, kTwo}};
  int violations = 0;
  int runs = 0;
  double worst_gap = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 100; ++i) {
    const BlockProfile prof = random_profile(rng, 3, 2);
    const Weight h(random_density(rng, prof));
    const Weight k(random_density(rng, prof));
    NormOptions o;
    o.seed = static_cast<std::uint64_t>(i);
    for (const auto& [p, q] : pairs) {
      const ChangeOfWeights cw = change_of_weights(h, k, p, q, o);
      ++runs;
      if (!(cw.measured.lower_bound <= cw.bound + 1e-6)) ++violations;
      worst_gap = std::min(worst_gap, cw.bound - cw.measured.lower_bound);
    }
  }
  pass = pass && violations == 0;
  return {pass, "example bound " + fmt("%.6f", example.bound) + ", " + std::to_string(runs) + " runs, violations " +
                    std::to_string(violations) + ", min (bound - measured) " + fmt("%.3g", worst_gap)};
}

// --- 3 ----------------------------------------------------------------------

Outcome two_two_oracle() {
  Rng rng(303);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const BlockProfile dom = random_profile(rng, 3, 2);
    const BlockProfile cod = random_profile(rng, 3, 2);
    const Matrix m = random_gaussian(rng, cod.carrier_dim(), dom.carrier_dim());
    const SuperOperator s = SuperOperator::from_matrix(dom, kTwo, cod, kTwo, m);
    NormOptions o;
    o.seed = 7;
    o.restarts = 16;
    o.force_iterative = true;
    const double iterative = operator_norm(s, o).lower_bound;
    const double exact = oracle::spectral_norm(m);
    worst = std::max(worst, std::abs(exact - iterative) / exact);
  }
  return {worst < 1e-4, "50 operators, worst relative gap " + fmt("%.3g", worst)};
}

// --- 4 ----------------------------------------------------------------------

Outcome module_round_trip() {
  Rng rng(404);
  const std::vector<std::pair<Exponent, Exponent>> pairs{{kTwo, kTwo}, {kTwo, kOne}, {kThree, Exponent::rational(3, 2)}};
  double worst_residual = 0.0;
  double worst_error = 0.0;
  int recovered = 0;
  for (int i = 0; i < 100; ++i) {
    const BlockProfile prof = random_profile(rng, 3, 2);
    const Weight w(random_density(rng, prof));
    const BlockMatrix c = random_element(rng, prof);
    const auto& [p, q] = pairs[static_cast<std::size_t>(i) % pairs.size()];
    const SuperOperator t(prof, p, prof, q, [c](const BlockMatrix& x) { return c * x; });
    const MultiplierRecovery r = analyze_left_multiplier(t, w);
    if (r.recovered) ++recovered;
    worst_residual = std::max(worst_residual, r.residual);
    worst_error = std::max(worst_error, (r.c - c).max_abs() / std::max(1.0, c.max_abs()));
  }

  int rejected = 0;
  for (int i = 0; i < 20; ++i) {
    const BlockProfile prof = i % 2 ? BlockProfile{2, 2} : BlockProfile{3};
    const Weight w(random_density(rng, prof));
    const BlockMatrix b = random_element(rng, prof);
    SuperOperator::Action action;
    switch (i % 3) {
      case 0:
        action = [](const BlockMatrix& x) { return x.transpose(); };
        break;
      case 1:
        action = [b](const BlockMatrix& x) { return x * b; };
        break;
      default:
        action = [b](const BlockMatrix& x) { return b * x * b.adjoint(); };
        break;
    }
    const SuperOperator t(prof, kTwo, prof, kTwo, action);
    try {
      recover_left_multiplier(t, w);
    } catch (const Error& e) {
      const MultiplierRecovery r = analyze_left_multiplier(t, w);
      if (e.code() == ErrorCode::NotModuleMap && r.witness.max_abs() > 0.0) ++rejected;
    }
  }
  return {recovered == 100 && worst_residual < 1e-8 && worst_error < 1e-8 && rejected == 20,
          std::to_string(recovered) + "/100 recovered (max residual " + fmt("%.2g", worst_residual) +
              ", max |c - c0| " + fmt("%.2g", worst_error) + "), " + std::to_string(rejected) +
              "/20 non-module maps rejected"};
}

// --- 5 ----------------------------------------------------------------------

Outcome classifier_completeness() {
  Rng rng(505);
  const std::vector<std::pair<Exponent, Exponent>> grid{
      {kTwo, kTwo}, {kTwo, kOne}, {kThree, Exponent::rational(3, 2)}, {kInf, kTwo}};
  int accepted = 0;
  int matched = 0;
  double worst_match = 0.0;
  int with_anti = 0;
  int partial = 0;
  for (int s = 0; s < 40; ++s) {
    const JordanMorphismSpec j = fixtures::random_tile_spec(rng);
    if (std::any_of(j.tiles().begin(), j.tiles().end(), [](const Tile& t) { return t.kind == TileKind::A; })) {
      ++with_anti;
    }
    if ((j.unit_image() - BlockMatrix::identity(j.dst())).max_abs() > 1e-12) ++partial;
    const Weight w1(random_density(rng, j.src()));
    const Weight w2(random_density(rng, j.dst()));
    for (const auto& [p, q] : grid) {
      const SuperOperator c = build_composition(j, w1, w2, p, q);
      const Classification cl = classify_characteristic_preserving(c, w1, w2, p, q, static_cast<std::uint64_t>(s));
      if (cl.verdict != Verdict::Accept || !cl.morphism) continue;
      ++accepted;
      double diff = 0.0;
      for (const BlockMatrix& e : BlockMatrix::unit_basis(j.src())) {
        diff = std::max(diff, (cl.morphism->apply(e) - j.apply(e)).max_abs());
      }
      worst_match = std::max(worst_match, diff);
      if (diff < 1e-8) ++matched;
    }
  }

  int rejected = 0;
  for (int s = 0; s < 20; ++s) {
    const JordanMorphismSpec j = fixtures::random_tile_spec(rng);
    const Weight w1(random_density(rng, j.src()));
    const Weight w2(random_density(rng, j.dst()));
    const auto& [p, q] = grid[static_cast<std::size_t>(s) % grid.size()];
    const SuperOperator c = build_composition(j, w1, w2, p, q);
    const Matrix noise = random_gaussian(rng, c.matrix().rows(), c.matrix().cols());
    const SuperOperator perturbed = SuperOperator::from_matrix(j.src(), p, j.dst(), q, c.matrix() + 0.05 * noise);
    const Classification cl = classify_characteristic_preserving(perturbed, w1, w2, p, q);
    if (cl.verdict == Verdict::Reject) ++rejected;
  }
  return {accepted == 160 && matched == 160 && rejected == 20,
          std::to_string(accepted) + "/160 accepted, " + std::to_string(matched) + "/160 match J (max " +
              fmt("%.2g", worst_match) + "; " + std::to_string(with_anti) + " specs with A tiles, " +
              std::to_string(partial) + " with J(1) != 1), " + std::to_string(rejected) + "/20 perturbed rejected"};
}

// --- 6 ----------------------------------------------------------------------

Outcome isomorphism_isometry() {
  Rng rng(606);
  const std::vector<Exponent> ps{kOne, kTwo, kThree, kInf};
  double worst = 0.0;
  int checks = 0;
  for (int i = 0; i < 50; ++i) {
    const JordanMorphismSpec j = fixtures::random_isomorphism(rng, i % 2 == 1);
    const Weight w2(random_density(rng, j.dst()));
    const Weight k = pushforward_density(j, w2);
    for (int s = 0; s < 4; ++s) {
      const BlockMatrix a = random_element(rng, j.src());
      for (const Exponent& p : ps) {
        const double lhs = embed(k, a, p).norm();
        const double rhs = embed(w2, j.apply(a), p).norm();
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
        ++checks;
      }
    }
  }
  return {worst < 1e-9, std::to_string(checks) + " norm pairs, max deviation " + fmt("%.2g", worst)};
}

// --- 7 ----------------------------------------------------------------------

Outcome commuting_weights() {
  Rng rng(707);
  const std::vector<double> times{-1.3, -0.4, 0.25, 0.7, 1.9, 3.1};
  std::bernoulli_distribution coin(0.5);
  int centralizer_agree = 0;
  int centralizer_true = 0;
  int weights_agree = 0;
  int weights_true = 0;
  for (int i = 0; i < 200; ++i) {
    const BlockProfile prof = random_profile(rng, 3, 2);
    const Weight w(random_density(rng, prof));
    const EigenDecomposition eig = hermitian_eig(w.density());

    // d: a function of the density, or generic
    BlockMatrix d = random_element(rng, prof);
    if (coin(rng)) {
      std::vector<double> diag;
      std::normal_distribution<double> g;
      for (int k = 0; k < prof.total_dim(); ++k) diag.push_back(g(rng));
      d = eig.vectors * BlockMatrix::diagonal(prof, diag) * eig.vectors.adjoint();
    }
    const CentralizerReport c = in_centralizer(w, d, times);
    if (c.in_centralizer == c.orbit_fixed) ++centralizer_agree;
    if (c.in_centralizer) ++centralizer_true;

    // v: a density diagonal in the same eigenbasis, or random
    BlockMatrix v = random_density(rng, prof);
    if (coin(rng)) {
      std::vector<double> diag;
      std::uniform_real_distribution<double> u(0.05, 1.0);
      for (int k = 0; k < prof.total_dim(); ++k) diag.push_back(u(rng));
      v = eig.vectors * BlockMatrix::diagonal(prof, diag) * eig.vectors.adjoint();
    }
    const Weight wv(v);
    const bool commutator_test = weights_commute(w, wv);
    const bool orbit_test = in_centralizer(w, wv.density(), times).orbit_fixed;
    if (commutator_test == orbit_test) ++weights_agree;
    if (commutator_test) ++weights_true;
  }

  const std::vector<Exponent> qs{kOne, Exponent::rational(3, 2), kTwo, kThree};
  int decompositions = 0;
  int draws = 0;
  double min_gap = std::numeric_limits<double>::infinity();
  int holds = 0;
  fixtures::TileSpecOptions opts;
  opts.max_copies = 3;
  while (decompositions < 100 && draws < 2000) {
    ++draws;
    const JordanMorphismSpec j = fixtures::random_tile_spec(rng, opts);
    const Weight w2(random_density(rng, j.dst()));
    const ZDecomposition z = decompose(j, w2);
    if (!weights_commute(z.phi_z, z.phi_1mz)) continue;
    const SplittingReport s =
        splitting_inequality_check(z.phi_j, z.phi_z, z.phi_1mz, qs[static_cast<std::size_t>(decompositions) % qs.size()]);
    ++decompositions;
    if (s.holds && s.min_gap_eigenvalue >= -1e-9) ++holds;
    min_gap = std::min(min_gap, s.min_gap_eigenvalue);
  }
  return {centralizer_agree == 200 && weights_agree == 200 && decompositions == 100 && holds == 100,
          "centralizer agree " + std::to_string(centralizer_agree) + "/200 (" + std::to_string(centralizer_true) +
              " commuting), weights agree " + std::to_string(weights_agree) + "/200 (" + std::to_string(weights_true) +
              " commuting), splitting " + std::to_string(holds) + "/" + std::to_string(decompositions) +
              " (min gap " + fmt("%.3g", min_gap) + ")"};
}

// --- 8 ----------------------------------------------------------------------

Outcome classical_layer() {
  const FiniteMeasureSpace m1({0.5, 0.5});
  const FiniteMeasureSpace m2({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const PointMap t(2, {0, 0, 1});
  const hlp::Criterion c = criterion(t, m1, m2, kTwo, kOne);
  // f_J = (4/3, 2/3) on atoms of mass 1/2
  const double oracle_norm = std::sqrt(0.5 * (16.0 / 9.0) + 0.5 * (4.0 / 9.0));
  bool pass = c.r == kTwo && std::abs(c.norm_f - 1.054093) <= 1e-6 && std::abs(c.norm_f - oracle_norm) < 1e-12;

  const double delta = eps_delta_modulus({0.7, 0.1, 0.1, 0.1}, {0.25, 0.25, 0.25, 0.25}, 0.5);
  pass = pass && delta == 0.25;

  Rng rng(808);
  std::uniform_int_distribution<int> size(1, 6);
  std::uniform_real_distribution<double> mass(0.05, 1.0);
  std::bernoulli_distribution in_y(0.8);
  const std::vector<std::pair<Exponent, Exponent>> pairs{
      {kTwo, kOne}, {kThree, Exponent::rational(3, 2)}, {kTwo, kTwo}, {kInf, kTwo}};
  double composite = 0.0;
  double diagonal = 0.0;
  for (int i = 0; i < 50; ++i) {
    std::vector<double> a(static_cast<std::size_t>(size(rng)));
    std::vector<double> b(static_cast<std::size_t>(size(rng)));
    for (double& v : a) v = mass(rng);
    for (double& v : b) v = mass(rng);
    std::uniform_int_distribution<std::size_t> target(0, a.size() - 1);
    std::vector<std::optional<std::size_t>> map(b.size());
    for (auto& m : map) {
      if (in_y(rng)) m = target(rng);
    }
    map[0] = target(rng);
    const PointMap tm(a.size(), map);
    const FiniteMeasureSpace s1(a);
    const FiniteMeasureSpace s2(b);
    const auto& [p, q] = pairs[static_cast<std::size_t>(i) % pairs.size()];
    composite = std::max(composite, five_step_pipeline(tm, s1, s2, p, q).composite_residual);
    diagonal = std::max(diagonal, diagonal_consistency(tm, s1, s2, p, q).residual);
  }
  pass = pass && composite < 1e-10 && diagonal < 1e-9;
  return {pass, "r = " + c.r.to_string() + ", ||f_J||_r = " + fmt("%.6f", c.norm_f) + ", delta* = " +
                    fmt("%g", delta) + ", pipeline residual " + fmt("%.2g", composite) + ", diagonal residual " +
                    fmt("%.2g", diagonal)};
}

// --- 9 ----------------------------------------------------------------------

Outcome infinity_unit_bound() {
  Rng rng(909);
  const std::vector<Exponent> qs{kOne, Exponent::rational(3, 2), kTwo, kThree, kInf};
  int violations = 0;
  int checks = 0;
  double min_slack = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 10; ++s) {
    const JordanMorphismSpec j = fixtures::random_tile_spec(rng);
    const Weight w1(random_density(rng, j.src()));
    const Weight w2(random_density(rng, j.dst()));
    const Exponent& q = qs[static_cast<std::size_t>(s) % qs.size()];
    const SuperOperator c = build_composition(j, w1, w2, kInf, q);
    const double unit = schatten_norm(c.apply(BlockMatrix::identity(j.src())), q);
    for (int i = 0; i < 20; ++i) {
      const BlockMatrix a = random_self_adjoint(rng, j.src());
      const double lhs = schatten_norm(c.apply(a), q);
      const double rhs = unit * operator_norm(a);
      if (lhs > rhs + 1e-9) ++violations;
      min_slack = std::min(min_slack, rhs - lhs);
      ++checks;
    }
  }
  return {violations == 0, std::to_string(checks) + " elements over 10 specs, violations " +
                               std::to_string(violations) + ", min slack " + fmt("%.3g", min_slack)};
}

// --- 10 ---------------------------------------------------------------------

#ifdef HLP_HAVE_CLI

std::string strip_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::string out;
  while (std::getline(in, line)) {
    if (line.find("\"wall_time_s\"") != std::string::npos) continue;
    out += line;
    out += '\n';
  }
  return out;
}

Outcome cli_determinism() {
  const std::string dir = HLP_EXAMPLES_DIR;
  const std::vector<std::vector<std::string>> invocations{
      {"check-jordan", "identity.json"},
      {"check-jordan", "transpose.json", "--samples", "30", "--seed", "5"},
      {"check-jordan", "bad_offset.json"},
      {"norm", "change_of_weights.json"},
      {"norm", "identity.json", "--p", "3", "--q", "1.5", "--restarts", "8", "--seed", "11"},
      {"norm", "change_of_weights.json", "--p", "1", "--q", "2"},
      {"classify", "classify_identity.json"},
      {"classify", "classify_transpose.json"},
      {"classify", "classify_perturbed.json"},
      {"change-of-weights", "change_of_weights.json", "--r", "2"},
      {"classical", "classical_running.json"},
      {"classical", "classical_empty.json"},
      {"modular", "modular_commuting.json"},
      {"modular", "modular_rotated.json", "--t", "0,0.5,2"},
  };
  int identical = 0;
  std::vector<std::string> commands;
  std::string mismatch;
  for (const auto& inv : invocations) {
    std::string reports[2];
    int codes[2];
    for (int k = 0; k < 2; ++k) {
      std::vector<std::string> args{"hlp", inv[0], dir + "/" + inv[1]};
      args.insert(args.end(), inv.begin() + 2, inv.end());
      args.push_back("--format");
      args.push_back("machine");
      std::vector<const char*> argv;
      for (const auto& a : args) argv.push_back(a.c_str());
      std::ostringstream out;
      std::ostringstream err;
      codes[k] = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
      reports[k] = out.str();
    }
    if (codes[0] == codes[1] && !reports[0].empty() && strip_wall_time(reports[0]) == strip_wall_time(reports[1])) {
      ++identical;
    } else if (mismatch.empty()) {
      mismatch = " (first mismatch: " + inv[0] + " " + inv[1] + ")";
    }
    if (std::find(commands.begin(), commands.end(), inv[0]) == commands.end()) commands.push_back(inv[0]);
  }
  const int total = static_cast<int>(invocations.size());
  const bool all_commands = commands.size() == cli::command_names().size();
  return {identical == total && all_commands, std::to_string(identical) + "/" + std::to_string(total) +
                                                  " invocations identical across " + std::to_string(commands.size()) +
                                                  " commands" + mismatch};
}

#else

Outcome cli_determinism() { return {false, "built without the CLI (HLP_BUILD_TOOLS=OFF)"}; }

#endif

}  // namespace

int main() {
  const std::vector<Check> criteria{
      {1, "Holder inequality suite", 10, holder_suite},
      {2, "change-of-weights sandwich", 60, change_of_weights_sandwich},
      {3, "(2,2) maximizer vs SVD norm", 30, two_two_oracle},
      {4, "left-multiplier round trip", 10, module_round_trip},
      {5, "classifier completeness", 120, classifier_completeness},
      {6, "isomorphism isometry", 10, isomorphism_isometry},
      {7, "commuting weights and splitting", 10, commuting_weights},
      {8, "classical layer", 20, classical_layer},
      {9, "p = inf unit bound", 10, infinity_unit_bound},
      {10, "CLI determinism", 10, cli_determinism},
  };
  int failures = 0;
  for (const Check& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = elapsed < c.limit_s;
    const bool pass = o.pass && in_time;
    if (!pass) ++failures;
    std::printf("%s [%2d] %s: %s; %.2f s (limit %.0f s)%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                elapsed, c.limit_s, in_time ? "" : " TIMEOUT");
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
