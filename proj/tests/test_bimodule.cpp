#include "orbikit/bimodule_analysis.hpp"
#include "orbikit/fib_solver.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

using namespace orbikit;

namespace {

const OrbifoldDatum& flagship() {
  static const OrbifoldDatum d = build_fib_datum(FibParams{19, -1});
  return d;
}

const IntMatrix kGrade0 = {{2, 3, 0, 1, 1, 1}, {3, 8, 1, 6, 5, 5}, {0, 1, 2, 3, 1, 1},
                           {1, 6, 3, 8, 5, 5}, {1, 5, 1, 5, 4, 4}, {1, 5, 1, 5, 4, 4}};
const IntMatrix kGrade1 = {{3, 3, 1, 1, 1, 5}, {3, 3, 1, 1, 1, 5}, {1, 1, 3, 3, 1, 5},
                           {1, 1, 3, 3, 1, 5}, {1, 1, 1, 1, 2, 4}, {5, 5, 5, 5, 4, 14}};

BimoduleVector named(const std::string& name) {
  for (const auto& [n, v] : fib_ising_simple_objects()) {
    if (n == name) return v;
  }
  throw std::invalid_argument(name);
}

double sl2_dim(int j) { return std::sin((j + 1) * std::numbers::pi / 12) / std::sin(std::numbers::pi / 12); }

}  // namespace

TEST_CASE("simple bimodule labels", "[bimodule]") {
  CHECK(simple_bimodules(fib_ansatz(), 3).size() == 12);
  CHECK(simple_bimodules(OrbifoldAnsatz({"iota"}), 3).size() == 3);
  CHECK(simple_bimodules(OrbifoldAnsatz({"a", "b", "c"}), 2).size() == 18);
  const auto cat = build_ising(IsingParams{0, 1});
  const auto labels = simple_bimodules(fib_ansatz(), 3);
  CHECK(label_name(fib_ansatz(), cat, labels[9]) == "iota|sigma|phi");
}

TEST_CASE("X-matrix reproduces both grade blocks", "[bimodule]") {
  const XMatrix X = x_matrix(flagship());
  REQUIRE(X.blocks.size() == 2);
  CHECK(X.blocks[0] == std::vector<int>{0, 3, 4, 7, 9, 10});
  CHECK(X.blocks[1] == std::vector<int>{1, 2, 5, 6, 8, 11});
  CHECK(X.block(0) == kGrade0);
  CHECK(X.block(1) == kGrade1);
  // Depends only on fusion rules and t.
  CHECK(x_matrix(build_fib_datum(FibParams{1, 1})).values == X.values);
}

TEST_CASE("grading detection", "[bimodule]") {
  CHECK(detect_grading({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}).size() == 3);
  CHECK(detect_grading({{1, 1, 1}, {1, 1, 1}, {1, 1, 1}}).size() == 1);
  CHECK(detect_grading({{1, 0, 1}, {0, 1, 0}, {1, 0, 1}}) == std::vector<std::vector<int>>{{0, 2}, {1}});
}

TEST_CASE("peeling small matrices", "[bimodule]") {
  const auto sols = peel({{1}});
  REQUIRE(sols.size() == 1);
  CHECK(sols[0] == Factorization{{1}});
  auto vect = std::make_shared<const FusionCategoryData>(trivial_category());
  const PeelAnalysis pa = peel_analysis(trivial_datum(vect), 1);
  CHECK(pa.rows.size() == 1);
  CHECK_THROWS(peel({{-1}}));
  // 2 = 1^2 + 1^2 with a fixed unit row (1): the rest is (1).
  CHECK(peel({{2}}, {1}) == std::vector<Factorization>{{{1}, {1}}});
}

TEST_CASE("flagship peeling", "[bimodule]") {
  const PeelAnalysis pa = peel_analysis(flagship());
  REQUIRE(pa.block_solutions.size() == 2);
  CHECK(pa.block_solutions[0].size() == 1);
  CHECK(pa.block_solutions[0][0].size() == 6);
  REQUIRE(pa.block_solutions[1].size() == 2);
  std::vector<std::size_t> sizes{pa.block_solutions[1][0].size(), pa.block_solutions[1][1].size()};
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{5, 6});
  CHECK(pa.accepted.size() == 2);

  const PeelAnalysis ranked = peel_analysis(flagship(), rank(flagship()));
  REQUIRE(ranked.accepted.size() == 1);
  REQUIRE(ranked.rows.size() == 11);
  CHECK(ranked.rows.front() == unit_bimodule(flagship()));
  CHECK(ranked.rows.front() == named("A"));
  // Every peeled row is one of the named objects, and each name is hit.
  std::vector<BimoduleVector> expected;
  for (const auto& [n, v] : fib_ising_simple_objects()) expected.push_back(v);
  std::vector<BimoduleVector> got = ranked.rows;
  const auto key = [](const BimoduleVector& v) { return v.entries(); };
  std::sort(expected.begin(), expected.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  std::sort(got.begin(), got.end(), [&](auto& a, auto& b) { return key(a) < key(b); });
  CHECK(got == expected);
}

TEST_CASE("quantum dimensions match C(sl(2),10)", "[bimodule]") {
  const OrbifoldDatum& d = flagship();
  const std::vector<std::pair<std::string, double>> table = {{"A", 1},      {"E2", 1},   {"Psi1", 1.93}, {"L", 1.93},
                                                             {"Phi1", 2.73}, {"Phi2", 2.73}, {"S1", 3.34}, {"S2", 3.34},
                                                             {"Delta", 3.73}, {"E1", 3.73}, {"Psi2", 3.86}};
  std::vector<double> dims;
  Cyclo sum_sq;
  for (const auto& [name, truncated] : table) {
    const Cyclo q = qdim_from_bimodule(d, named(name));
    const double x = embed(q).real();
    INFO(name << " " << x);
    CHECK(std::abs(embed(q).imag()) < 1e-12);
    CHECK(std::floor(x * 100 + 1e-9) / 100 == Catch::Approx(truncated));
    dims.push_back(x);
    sum_sq += q * q;
  }
  std::vector<double> ref;
  for (int j = 0; j <= 10; ++j) ref.push_back(sl2_dim(j));
  std::sort(dims.begin(), dims.end());
  std::sort(ref.begin(), ref.end());
  for (std::size_t k = 0; k < 11; ++k) CHECK(std::abs(dims[k] - ref[k]) < 1e-12);
  CHECK(sum_sq == orbifold_global_dimension(d));
  CHECK_THROWS(qdim_from_bimodule(d, BimoduleVector(2, 3)));
  BimoduleVector lopsided(2, 3);
  lopsided.at(0, 0, 0) = 1;
  lopsided.at(1, 2, 1) = 1;
  CHECK_THROWS(qdim_from_bimodule(d, lopsided));
}

TEST_CASE("tensor unit acts trivially", "[bimodule]") {
  const auto cat = build_ising(IsingParams{0, 1});
  const BimoduleVector A = named("A");
  for (const auto& [n, v] : fib_ising_simple_objects()) {
    CHECK(tensor_bimodules(cat, A, v) == v);
    CHECK(tensor_bimodules(cat, v, A) == v);
  }
}

TEST_CASE("tensor product respects the grading", "[bimodule][property]") {
  const XMatrix X = x_matrix(flagship());
  const FusionCategoryData& cat = flagship().category();
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> mult(0, 2), pick(0, 1);
  const auto random_homogeneous = [&](int grade) {
    BimoduleVector v(2, 3);
    for (int idx : X.blocks[static_cast<std::size_t>(grade)]) v.at(X.labels[static_cast<std::size_t>(idx)]) = mult(rng);
    return v;
  };
  const auto in_grade = [&](const BimoduleVector& v, int grade) {
    for (int idx : X.blocks[static_cast<std::size_t>(1 - grade)])
      if (v.at(X.labels[static_cast<std::size_t>(idx)]) != 0) return false;
    return true;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const int g = pick(rng), h = pick(rng);
    const BimoduleVector u = random_homogeneous(g), v = random_homogeneous(h);
    CHECK(in_grade(tensor_bimodules(cat, u, v), (g + h) % 2));
  }
}

TEST_CASE("Psi1 squared is ambiguous at the bimodule level", "[bimodule]") {
  const auto cat = build_ising(IsingParams{0, 1});
  const BimoduleVector sq = tensor_bimodules(cat, named("Psi1"), named("Psi1"));
  CHECK(sq == named("Delta"));
  CHECK(sq.grid_entry(cat, 1, 1) == "2*1+eps");
  std::vector<BimoduleVector> rows;
  std::vector<std::string> names;
  for (const auto& [n, v] : fib_ising_simple_objects()) rows.push_back(v), names.push_back(n);
  std::vector<std::string> found;
  for (const auto& dec : bimodule_decompositions(sq, rows)) {
    std::string s;
    for (std::size_t i : dec) s += (s.empty() ? "" : "+") + names[i];
    found.push_back(s);
  }
  std::sort(found.begin(), found.end());
  CHECK(found == std::vector<std::string>{"A+Phi1", "Delta"});
  CHECK(fib_ising_object_name(named("Phi1")) == "Phi1/Phi2");
  CHECK(fib_ising_object_name(sq) == "Delta");
}
