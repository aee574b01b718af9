// Acceptance gate: one line per criterion, nonzero exit when any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cohdist/channels.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace {

using namespace cohdist;
using testing::Rng;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

struct Criterion {
  const char* id;
  const char* title;
  double budget_s;
  std::function<Outcome()> run;
};

std::string str(double x) {
  std::ostringstream os;
  os.precision(3);
  os << x;
  return os.str();
}

std::vector<double> probs_of(const PureState& s) {
  std::vector<double> p(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) p[i] = std::norm(s[i]);
  return p;
}

/// Random transfers from poorer to richer levels; the result majorizes p.
std::vector<double> concentrate(Rng& rng, std::vector<double> p, std::size_t moves) {
  for (std::size_t m = 0; m < moves && p.size() > 1; ++m) {
    const std::size_t a = testing::uniform_index(rng, 0, p.size() - 1);
    const std::size_t b = testing::uniform_index(rng, 0, p.size() - 1);
    if (a == b) continue;
    const std::size_t rich = p[a] >= p[b] ? a : b;
    const std::size_t poor = rich == a ? b : a;
    const double amount = testing::uniform(rng) * p[poor];
    p[rich] += amount;
    p[poor] -= amount;
  }
  // Occasionally drop emptied levels so output dimensions vary.
  std::vector<double> out;
  for (double x : p)
    if (x > 1e-6 || testing::uniform(rng) < 0.5) out.push_back(x);
  if (out.empty()) out.push_back(1.0);
  double sum = 0.0;
  for (double x : out) sum += x;
  for (double& x : out) x /= sum;
  return out;
}

PureState with_random_phases(Rng& rng, const std::vector<double>& p) {
  ComplexVector c(static_cast<Eigen::Index>(p.size()));
  for (std::size_t i = 0; i < p.size(); ++i)
    c(static_cast<Eigen::Index>(i)) = std::polar(std::sqrt(p[i]), testing::uniform(rng, 0.0, 6.283185307179586));
  return PureState(c);
}

Outcome ac1() {
  Outcome o;
  Rng rng(0xA11);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = testing::uniform_index(rng, 2, 5);
    // Largest n <= 10 with d^n <= 1024.
    std::size_t limit = 1;
    while (limit < 10 && std::pow(static_cast<double>(d), limit + 1) <= 1024.0) ++limit;
    const std::size_t n = testing::uniform_index(rng, 1, limit);
    const auto psi = testing::random_pure(rng, d);
    const std::vector<DensityMatrix> copies(n, psi.density());
    const int got = n_max(copies).n_max;
    const int want = testing::pure_product_n_max(std::vector<std::vector<double>>(n, probs_of(psi)));
    if (got != want) o.fail("trial " + std::to_string(trial) + ": n_max " + std::to_string(got) + " vs oracle " +
                            std::to_string(want));
  }
  return o;
}

Outcome ac2() {
  Outcome o;
  const auto plus = PureState::maximally_coherent(2).density();
  for (int n = 1; n <= 10; ++n) {
    const std::vector<DensityMatrix> copies(static_cast<std::size_t>(n), plus);
    const int got = n_max(copies).n_max;
    if (got != n) o.fail(std::to_string(n) + " copies gave " + std::to_string(got));
  }
  return o;
}

ProbVector random_comparator(Rng& rng, const ProbVector& anchor, std::size_t d) {
  switch (testing::uniform_index(rng, 0, 2)) {
    case 0:
      return testing::random_prob(rng, d, 0.3);
    case 1: {
      // Small perturbation of the anchor, straddling it in the order.
      const ProbVector sorted = sort_desc(anchor);
      std::vector<double> v(sorted.entries().begin(), sorted.entries().end());
      v.resize(d, 0.0);
      double sum = 0.0;
      for (double& x : v) {
        x = std::max(0.0, x + 0.02 * (testing::uniform(rng) - 0.5));
        sum += x;
      }
      for (double& x : v) x /= sum;
      return ProbVector(v);
    }
    default: {
      std::vector<double> v(anchor.entries().begin(), anchor.entries().end());
      v = concentrate(rng, v, 2);
      return ProbVector(v);
    }
  }
}

Outcome ac3() {
  Outcome o;
  Rng rng(0xA33);
  std::size_t upper_hits = 0, lower_hits = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t count = testing::uniform_index(rng, 1, 5);
    const std::size_t d = testing::uniform_index(rng, 1, 8);
    std::vector<ProbVector> set;
    for (std::size_t k = 0; k < count; ++k) set.push_back(testing::random_prob(rng, testing::uniform_index(rng, 1, d), 0.2));
    const ProbVector j = join(set);
    const ProbVector m = meet(set);

    std::vector<double> top(d, 0.0);
    for (const auto& p : set) {
      const auto c = testing::prefix_sums_sorted({p.entries().begin(), p.entries().end()}, d);
      for (std::size_t l = 0; l < d; ++l) top[l] = std::max(top[l], c[l]);
    }
    const auto lcm = testing::least_concave_majorant(top);
    const auto jc = testing::prefix_sums_sorted({j.entries().begin(), j.entries().end()}, d);
    for (std::size_t l = 0; l < d; ++l)
      if (std::abs(jc[l] - lcm[l]) > 1e-12) o.fail("join curve off the concave majorant at trial " + std::to_string(trial));

    for (const auto& p : set) {
      if (!majorizes(j, p)) o.fail("join is not an upper bound at trial " + std::to_string(trial));
      if (!majorizes(p, m)) o.fail("meet is not a lower bound at trial " + std::to_string(trial));
    }
    for (int c = 0; c < 1000; ++c) {
      const ProbVector r = random_comparator(rng, c % 2 ? j : m, d);
      bool above_all = true, below_all = true;
      for (const auto& p : set) {
        above_all = above_all && majorizes(r, p);
        below_all = below_all && majorizes(p, r);
      }
      if (above_all) {
        ++upper_hits;
        if (!majorizes(r, j)) o.fail("an upper bound fails to majorize the join at trial " + std::to_string(trial));
      }
      if (below_all) {
        ++lower_hits;
        if (!majorizes(m, r)) o.fail("a lower bound is not below the meet at trial " + std::to_string(trial));
      }
    }
  }
  if (o.pass) o.detail = std::to_string(upper_hits) + " upper / " + std::to_string(lower_hits) + " lower comparators";
  return o;
}

Outcome ac4() {
  Outcome o;
  const std::vector<ProbVector> js{ProbVector({0.5, 0.2, 0.2, 0.1}), ProbVector({0.31, 0.31, 0.31, 0.07})};
  const std::vector<ProbVector> ms{ProbVector({0.6, 0.25, 0.15}), ProbVector({0.5, 0.45, 0.05})};
  const std::vector<double> jw{0.5, 0.215, 0.215, 0.07};
  const std::vector<double> mw{0.5, 0.35, 0.15};
  const auto j = join(js);
  const auto m = meet(ms);
  if (j.dim() != 4 || m.dim() != 3) return {false, "wrong dimensions"};
  for (std::size_t i = 0; i < 4; ++i)
    if (std::abs(j[i] - jw[i]) > 1e-12) o.fail("join entry " + std::to_string(i) + " = " + str(j[i]));
  for (std::size_t i = 0; i < 3; ++i)
    if (std::abs(m[i] - mw[i]) > 1e-12) o.fail("meet entry " + std::to_string(i) + " = " + str(m[i]));
  return o;
}

Outcome ac5() {
  Outcome o;
  Rng rng(0xA55);
  int wrong = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = testing::uniform_index(rng, 1, 6);
    const std::size_t d = k + testing::uniform_index(rng, 0, 3);
    const auto psi = testing::random_pure(rng, k);
    ComplexVector embedded = ComplexVector::Zero(static_cast<Eigen::Index>(d));
    const auto slot = testing::random_permutation(rng, d);
    for (std::size_t i = 0; i < k; ++i) embedded(static_cast<Eigen::Index>(slot(i))) = psi[i];
    const auto a = comparison_matrix(PureState(embedded).density());
    bool ones = true;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        if (a.support[i] && a.support[j] && a(i, j) < 1.0 - 1e-9) ones = false;
    if (!ones) ++wrong;
  }
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = testing::uniform_index(rng, 2, 7);
    const auto rho = testing::random_irreducible_mixture(rng, d, testing::uniform_index(rng, 2, d));
    if (!is_connected(support_graph(rho))) {
      o.fail("generated mixture is reducible");
      continue;
    }
    if (summarize(comparison_matrix(rho)).min_off_diagonal >= 1.0 - 1e-6) ++wrong;
  }
  if (wrong) o.fail(std::to_string(wrong) + " misclassified");
  return o;
}

Outcome ac6() {
  Outcome o;
  Rng rng(0xA66);
  for (int trial = 0; trial < 50; ++trial) {
    const auto built = testing::random_pure_blocks(rng, testing::uniform_index(rng, 1, 3), 4,
                                                   testing::uniform_index(rng, 0, 2));
    const auto rho = permute(built.rho, testing::random_permutation(rng, built.rho.dim()));
    const ProbVector psi = join_target(rho);
    std::vector<double> base(psi.entries().begin(), psi.entries().end());
    const auto phi = with_random_phases(rng, concentrate(rng, base, testing::uniform_index(rng, 0, 3)));
    const std::string tag = "trial " + std::to_string(trial) + ": ";

    if (!can_transform_to(rho, phi).feasible) {
      o.fail(tag + "constructed target judged infeasible");
      continue;
    }
    const SIOChannel ch = assemble_distillation_channel(rho, phi);
    for (const auto& k : ch.kraus())
      if (!is_strictly_incoherent(k)) o.fail(tag + "Kraus operator is not strictly incoherent");
    if (ch.completeness_error() > 1e-9) o.fail(tag + "completeness error " + str(ch.completeness_error()));
    const double err = testing::max_abs_diff(apply(ch, rho).matrix(), phi.density().matrix());
    if (err > 1e-9) o.fail(tag + "output misses the target by " + str(err));

    // Lower the largest entry below the join's by mixing toward uniform on one extra level.
    std::vector<double> flat = base;
    flat.push_back(0.0);
    const double eps = 0.05;
    for (double& x : flat) x = (1 - eps) * x + eps / static_cast<double>(flat.size());
    const auto bad = with_random_phases(rng, flat);
    if (can_transform_to(rho, bad).feasible) o.fail(tag + "perturbed target judged feasible");
  }
  return o;
}

Outcome ac7() {
  Outcome o;
  Rng rng(0xA77);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<DensityMatrix> states;
    const std::size_t count = testing::uniform_index(rng, 1, 2);
    for (std::size_t k = 0; k < count; ++k)
      states.push_back(testing::diagonal_state(testing::random_distribution(rng, testing::uniform_index(rng, 1, 8), 0.3)));
    const auto r = n_max(states);
    if (r.n_max != 0 || r.distillable_to_pure || !r.bound_state)
      o.fail("diagonal trial " + std::to_string(trial) + " misreported");
  }

  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m.block(0, 0, 2, 2).setConstant(0.25);
  m(2, 2) = 0.5;
  const std::vector<DensityMatrix> mixed{DensityMatrix::validate(m)};
  const auto r = n_max(mixed);
  if (r.distillable_to_pure) o.fail("0.5|+><+| (+) 0.5|2><2| reported distillable");
  if (r.bound_state) o.fail("0.5|+><+| (+) 0.5|2><2| reported bound");
  return o;
}

Outcome ac8() {
  Outcome o;
  Rng rng(0xA88);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::size_t> dims(testing::uniform_index(rng, 1, 5));
    for (auto& d : dims) d = testing::uniform_index(rng, 1, 5);
    const auto ordered = testing::random_mixed_blocks(rng, dims, testing::uniform_index(rng, 0, 3));
    const auto rho = permute(ordered, testing::random_permutation(rng, ordered.dim()));
    const auto dec = block_decompose(rho);
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    if (dec.blocks.size() != dims.size())
      o.fail(tag + std::to_string(dec.blocks.size()) + " blocks, expected " + std::to_string(dims.size()));
    const double err = testing::max_abs_diff(dec.reassemble(), rho.matrix());
    if (err > 1e-12) o.fail(tag + "reassembly error " + str(err));
  }
  return o;
}

Outcome ac9() {
  Outcome o;
  Rng rng(0xA99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto psi = testing::random_pure(rng, testing::uniform_index(rng, 1, 6));
    const auto mid = with_random_phases(rng, concentrate(rng, probs_of(psi), testing::uniform_index(rng, 0, 4)));
    const auto end = with_random_phases(rng, concentrate(rng, probs_of(mid), testing::uniform_index(rng, 0, 4)));
    const SIOChannel first = synthesize_pure_to_pure(psi, mid);
    const SIOChannel second = synthesize_pure_to_pure(mid, end);
    const std::string tag = "trial " + std::to_string(trial) + ": ";
    try {
      const SIOChannel both = compose(second, first);
      for (const auto& k : both.kraus())
        if (!is_strictly_incoherent(k)) o.fail(tag + "composed Kraus operator is not strictly incoherent");
      if (both.completeness_error() > 1e-8) o.fail(tag + "completeness error " + str(both.completeness_error()));
    } catch (const Error& e) {
      o.fail(tag + e.what());
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"AC1", "pure-state n_max matches the product formula", 60.0, ac1},
      {"AC2", "n copies of the two-level maximally coherent state give n", 10.0, ac2},
      {"AC3", "join equals the concave majorant; lattice bounds and extremality", 60.0, ac3},
      {"AC4", "worked meet and join instance", 1.0, ac4},
      {"AC5", "comparison matrix separates pure states from mixtures", 10.0, ac5},
      {"AC6", "assembled channels reach feasible targets; perturbed targets rejected", 120.0, ac6},
      {"AC7", "incoherent and mixed-singleton negative controls", 10.0, ac7},
      {"AC8", "scrambled block states reassemble exactly", 10.0, ac8},
      {"AC9", "composed synthesized channels stay strictly incoherent and complete", 10.0, ac9},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.budget_s) o = {false, "over the " + str(c.budget_s) + " s budget"};
    if (!o.pass) ++failures;
    std::printf("[%s] %s %s (%.2f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, secs,
                o.detail.empty() ? "" : ": ", o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
