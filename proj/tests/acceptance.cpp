// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include "orbikit/orbikit.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <set>

using namespace orbikit;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

template <class Fn>
void criterion(int id, const std::string& title, Fn&& fn) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    fn(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << (o.ok ? "PASS" : "FAIL") << "  " << id << ". " << title;
  std::cout << "  (" << std::fixed << std::setprecision(2) << secs << " s)";
  if (!o.ok) std::cout << "  -- " << o.detail;
  std::cout << std::endl;
  failures += o.ok ? 0 : 1;
}

std::string tag(int n, int eps) { return "n=" + std::to_string(n) + ", eps=" + std::to_string(eps); }

BimoduleVector named(const std::string& name) {
  for (const auto& [n, v] : fib_ising_simple_objects()) {
    if (n == name) return v;
  }
  throw std::invalid_argument(name);
}

// (n, delta, eps*nu) as printed.
constexpr int kSignTable[16][3] = {{1, -1, -1}, {5, 1, -1},  {7, 1, 1},    {11, -1, 1}, {13, -1, 1}, {17, 1, 1},
                                   {19, 1, -1}, {23, -1, -1}, {25, -1, -1}, {29, 1, -1}, {31, 1, 1},  {35, -1, 1},
                                   {37, -1, 1}, {41, 1, 1},   {43, 1, -1},  {47, -1, -1}};

const IntMatrix kGrade0 = {{2, 3, 0, 1, 1, 1}, {3, 8, 1, 6, 5, 5}, {0, 1, 2, 3, 1, 1},
                           {1, 6, 3, 8, 5, 5}, {1, 5, 1, 5, 4, 4}, {1, 5, 1, 5, 4, 4}};
const IntMatrix kGrade1 = {{3, 3, 1, 1, 1, 5}, {3, 3, 1, 1, 1, 5}, {1, 1, 3, 3, 1, 5},
                           {1, 1, 3, 3, 1, 5}, {1, 1, 1, 1, 2, 4}, {5, 5, 5, 5, 4, 14}};

std::multiset<std::vector<int>> as_set(const std::vector<BimoduleVector>& rows) {
  std::multiset<std::vector<int>> s;
  for (const auto& r : rows) s.insert(r.entries());
  return s;
}

std::multiset<std::vector<int>> named_set(std::initializer_list<const char*> names) {
  std::multiset<std::vector<int>> s;
  for (const char* n : names) s.insert(named(n).entries());
  return s;
}

}  // namespace

int main() {
  std::cout << "orbikit acceptance suite\n";

  criterion(1, "Ising validity: pentagon, FG, Dim = 4, anomaly = eps/zeta for all 16", [](Outcome& o) {
    for (int m = 0; m < 8; ++m)
      for (int eps : {1, -1}) {
        const Cyclo zeta = ising_zeta(m);
        const FusionCategoryData cat = build_ising(zeta, eps);
        const std::string t = "m=" + std::to_string(m) + ", eps=" + std::to_string(eps);
        o.require(check_pentagon(cat).ok(), "pentagon fails at " + t);
        o.require(check_FG_inverse(cat).ok(), "FG inverse fails at " + t);
        o.require(global_dimension(cat) == Cyclo(4), "Dim != 4 at " + t);
        o.require(anomaly(cat) == Cyclo(eps) * zeta.inv(), "anomaly mismatch at " + t);
      }
  });

  criterion(2, "Reconstruction: 32 data satisfy O1-O8; sign table matches", [](Outcome& o) {
    for (const auto& row : kSignTable)
      for (int eps : {1, -1}) {
        const SignPair s = sign_table(FibParams{row[0], eps});
        o.require(s.delta == row[1] && eps * s.nu == row[2], "sign table mismatch at " + tag(row[0], eps));
        CheckOptions opt;
        opt.stop_at_first = true;
        o.require(all_ok(check_all_conditions(build_fib_datum(FibParams{row[0], eps}), opt)), "conditions fail at " + tag(row[0], eps));
      }
  });

  criterion(3, "Branch exhaustiveness: exactly the tabulated (h, delta, nu) survive", [](Outcome& o) {
    int survivors = 0;
    for (const auto& r : branch_search()) {
      o.require(r.survives == r.expected, "branch " + tag(r.n, r.epsilon) + " delta=" + std::to_string(r.delta) + " nu=" + std::to_string(r.nu) +
                                              (r.survives ? " survives unexpectedly" : " eliminated: " + r.failure));
      survivors += r.survives ? 1 : 0;
    }
    o.require(survivors == 32, "survivor count " + std::to_string(survivors));
  });

  // Shared by 4, 5, 6 and 10.
  std::vector<ClassificationRecord> records;
  std::string classify_error;
  try {
    records = classify_all();
  } catch (const std::exception& e) {
    classify_error = e.what();
  }

  criterion(4, "Simplicity: dim Hom(A,A) = 1 for all 32", [&](Outcome& o) {
    o.require(classify_error.empty() && records.size() == 32, "classification failed: " + classify_error);
    for (const auto& r : records) o.require(r.dim_hom_AA == Cyclo(1), "dim Hom(A,A) != 1 at " + tag(r.n, r.epsilon));
  });

  criterion(5, "Global dimension: 24/(h^2+h^-2)^2 exactly; 6.43.. (n=1) and 89.5.. (n=19)", [&](Outcome& o) {
    o.require(classify_error.empty() && records.size() == 32, "classification failed: " + classify_error);
    for (const auto& r : records) {
      const Cyclo h = fib_h(r.n);
      const Cyclo s = h.pow(2) + h.pow(-2);
      o.require(r.global_dimension == Cyclo(24) / (s * s), "closed form mismatch at " + tag(r.n, r.epsilon));
      const double x = embed(r.global_dimension).real();
      if (r.n == 1) o.require(std::abs(x - 6.43) < 1e-2 && std::floor(x * 100) == 643, "n=1 gives " + std::to_string(x));
      if (r.n == 19) o.require(std::abs(x - 89.5) < 1e-1 && std::floor(x * 10) == 895, "n=19 gives " + std::to_string(x));
    }
  });

  criterion(6, "Rank: 11 for all 32; trivial datum in Ising has rank 3", [&](Outcome& o) {
    o.require(classify_error.empty() && records.size() == 32, "classification failed: " + classify_error);
    for (const auto& r : records) o.require(r.rank == 11, "rank " + std::to_string(r.rank) + " at " + tag(r.n, r.epsilon));
    auto is = std::make_shared<const FusionCategoryData>(build_ising(IsingParams{0, 1}));
    o.require(rank(trivial_datum(is)) == 3, "trivial Ising datum rank != 3");
  });

  const OrbifoldDatum flagship = build_fib_datum(FibParams{19, -1});

  criterion(7, "X-matrix: both 6x6 grade blocks exact, two blocks detected", [&](Outcome& o) {
    const XMatrix X = x_matrix(flagship);
    o.require(X.blocks.size() == 2, std::to_string(X.blocks.size()) + " blocks");
    if (X.blocks.size() != 2) return;
    o.require(X.blocks[0].size() == 6 && X.blocks[1].size() == 6, "block sizes");
    o.require(X.block(0) == kGrade0, "grade-0 block differs");
    o.require(X.block(1) == kGrade1, "grade-1 block differs");
  });

  criterion(8, "Peeling: unique grade 0, two grade-1 options, rank 11 selects the 5-row one", [&](Outcome& o) {
    const PeelAnalysis all = peel_analysis(flagship);
    o.require(all.block_solutions.size() == 2, "expected two blocks");
    if (all.block_solutions.size() != 2) return;
    o.require(all.block_solutions[0].size() == 1, "grade 0 has " + std::to_string(all.block_solutions[0].size()) + " factorizations");
    o.require(all.block_solutions[1].size() == 2, "grade 1 has " + std::to_string(all.block_solutions[1].size()) + " factorizations");
    std::vector<BimoduleVector> g0;
    for (const auto& row : all.block_solutions[0].front()) g0.push_back(embed_block_row(flagship, all.X, 0, row));
    o.require(as_set(g0) == named_set({"A", "Delta", "E1", "E2", "Phi1", "Phi2"}), "grade-0 rows differ");
    const PeelAnalysis ranked = peel_analysis(flagship, 11);
    o.require(ranked.accepted.size() == 1, "rank filter leaves " + std::to_string(ranked.accepted.size()) + " combinations");
    if (ranked.accepted.size() != 1) return;
    const auto& g1 = all.block_solutions[1][ranked.accepted.front()[1]];
    o.require(g1.size() == 5, "selected grade-1 factorization has " + std::to_string(g1.size()) + " rows");
    std::vector<BimoduleVector> rows1;
    for (const auto& row : g1) rows1.push_back(embed_block_row(flagship, all.X, 1, row));
    o.require(as_set(rows1) == named_set({"S1", "S2", "Psi1", "Psi2", "L"}), "grade-1 rows differ");
  });

  criterion(9, "Quantum dimensions: table values, sl(2) level 10, sum of squares = Dim", [&](Outcome& o) {
    const std::vector<std::pair<const char*, double>> table = {{"A", 1},       {"E2", 1},      {"Psi1", 1.93}, {"L", 1.93},
                                                               {"Phi1", 2.73}, {"Phi2", 2.73}, {"S1", 3.34},   {"S2", 3.34},
                                                               {"Delta", 3.73}, {"E1", 3.73},  {"Psi2", 3.86}};
    std::vector<double> got, ref;
    Cyclo sum_sq;
    for (const auto& [name, printed] : table) {
      const Cyclo q = qdim_from_bimodule(flagship, named(name));  // throws if per-a values disagree
      const double x = embed(q).real();
      o.require(std::abs(x - printed) < 1e-2, std::string(name) + " has dim " + std::to_string(x));
      got.push_back(x);
      sum_sq += q * q;
    }
    for (int j = 0; j <= 10; ++j) ref.push_back(std::sin((j + 1) * std::numbers::pi / 12) / std::sin(std::numbers::pi / 12));
    std::sort(got.begin(), got.end());
    std::sort(ref.begin(), ref.end());
    for (std::size_t k = 0; k < ref.size(); ++k) o.require(std::abs(got[k] - ref[k]) < 1e-6, "sl(2) mismatch at position " + std::to_string(k));
    o.require(sum_sq == orbifold_global_dimension(flagship), "sum of squared dims != Dim");
  });

  criterion(10, "Invariant triples (Dim, anomaly, dim Psi1) pairwise distinct", [&](Outcome& o) {
    o.require(classify_error.empty() && records.size() == 32, "classification failed: " + classify_error);
    for (std::size_t i = 0; i < records.size(); ++i)
      for (std::size_t j = i + 1; j < records.size(); ++j) {
        const auto& a = records[i];
        const auto& b = records[j];
        o.require(!(a.global_dimension == b.global_dimension && a.anomaly == b.anomaly && a.dim_psi1 == b.dim_psi1),
                  "triples coincide for " + tag(a.n, a.epsilon) + " and " + tag(b.n, b.epsilon));
      }
  });

  criterion(11, "Properties: gauge/rescale invariance, derive_g, field axioms, embedding", [&](Outcome& o) {
    std::mt19937_64 rng(20240601);
    OrbifoldDatum broken = flagship;
    broken.set_phi2(Cyclo(2));
    const auto verdicts = [](const OrbifoldDatum& d) {
      std::vector<bool> v;
      for (const auto& r : check_all_conditions(d)) v.push_back(r.ok());
      return v;
    };
    const auto base = verdicts(flagship), base_broken = verdicts(broken);
    const Cyclo dim = orbifold_global_dimension(flagship);
    for (int trial = 0; trial < 5; ++trial) {
      const GaugeParameters lam = random_gauge(rng, flagship.ansatz(), 48);
      const Cyclo xi = random_nonzero_cyclo(rng, 24);
      const OrbifoldDatum t = rescale(gauge_transform(flagship, lam), xi);
      o.require(verdicts(t) == base, "verdicts change under transform " + std::to_string(trial));
      o.require(verdicts(rescale(gauge_transform(broken, lam), xi)) == base_broken, "broken verdicts change under transform " + std::to_string(trial));
      o.require(dim_hom_AA(t) == Cyclo(1) && orbifold_global_dimension(t) == dim && rank(t) == 11, "invariants change under transform " + std::to_string(trial));
      OrbifoldDatum s = gauge_transform(flagship, lam);
      s.for_each_key([&](int a, int b, int c, int d, int p, int q, int i) { s.set_g(a, b, c, d, p, q, i, Cyclo()); });
      const OrbifoldDatum g = derive_g(s);
      o.require(check_condition(g, Condition::O2).ok() && check_condition(g, Condition::O3).ok(), "derive_g fails O2/O3");
    }
    for (int trial = 0; trial < 200; ++trial) {
      const Cyclo x = random_cyclo(rng, 48), y = random_cyclo(rng, 16), z = random_cyclo(rng, 12);
      o.require(x * (y + z) == x * y + x * z && (x * y) * z == x * (y * z) && x + y == y + x && x * y == y * x, "ring axiom fails");
      if (!x.is_zero()) o.require(x * x.inv() == Cyclo(1), "inverse fails");
      o.require(std::abs(embed(x * y) - embed(x) * embed(y)) < 1e-10 && std::abs(embed(x + y) - embed(x) - embed(y)) < 1e-10, "embedding not a homomorphism");
    }
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
