#pragma once

/// \file
/// JSON import/export. Scalars are {"conductor": n, "coeffs": ["p/q", ...]};
/// symbol tables are sparse lists of {"idx": [...], "value": ...} with objects
/// and B labels referred to by name. Round trips are exact.

#include "orbikit/fusion_data.hpp"
#include "orbikit/ising.hpp"
#include "orbikit/orbifold.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

namespace orbikit {

using json = nlohmann::ordered_json;

struct format_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string rational_to_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) s += "/" + denominator(q).str();
  return s;
}

inline Rational parse_rational(const std::string& s) {
  try {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    const BigInt den(s.substr(slash + 1));
    if (den == 0) throw format_error("zero denominator in '" + s + "'");
    return Rational(BigInt(s.substr(0, slash))) / Rational(den);
  } catch (const format_error&) {
    throw;
  } catch (const std::exception&) {
    throw format_error("malformed rational '" + s + "'");
  }
}

inline json to_json(const Cyclo& x) {
  json coeffs = json::array();
  for (const auto& c : x.coefficients()) coeffs.push_back(rational_to_string(c));
  return {{"conductor", x.conductor()}, {"coeffs", std::move(coeffs)}};
}

inline Cyclo cyclo_from_json(const json& j) {
  if (j.is_number_integer()) return Cyclo(j.get<long long>());
  if (!j.is_object() || !j.contains("conductor") || !j.contains("coeffs")) throw format_error("scalar must be {\"conductor\", \"coeffs\"}");
  const int n = j.at("conductor").get<int>();
  if (n < 1) throw format_error("conductor must be positive");
  std::vector<Rational> coeffs;
  for (const auto& c : j.at("coeffs")) coeffs.push_back(c.is_string() ? parse_rational(c.get<std::string>()) : Rational(c.get<long long>()));
  return Cyclo::from_coefficients(n, coeffs);
}

/// Approximate value as {"re", "im"} strings, for human-facing output.
inline json approx_json(const Cyclo& x, int precision = kDefaultPrecision) {
  const auto z = embed(x, precision);
  std::ostringstream re, im;
  re.precision(precision);
  im.precision(precision);
  re << std::fixed << (std::abs(z.real()) < 0.5 * std::pow(10.0, -precision) ? 0.0 : z.real());
  im << std::fixed << (std::abs(z.imag()) < 0.5 * std::pow(10.0, -precision) ? 0.0 : z.imag());
  return {{"re", re.str()}, {"im", im.str()}};
}

// ---------------------------------------------------------------------------
// Fusion categories

inline json to_json(const FusionCategoryData& cat) {
  const int r = cat.rank();
  const auto nm = [&](ObjectId i) { return cat.name(i); };
  json j;
  j["descriptor"] = cat.descriptor();
  j["objects"] = cat.objects();
  j["unit"] = nm(cat.unit());
  json duals = json::object(), qdim = json::object(), twist = json::object();
  for (int i = 0; i < r; ++i) {
    duals[nm(i)] = nm(cat.dual(i));
    qdim[nm(i)] = to_json(cat.qdim(i));
    twist[nm(i)] = to_json(cat.twist(i));
  }
  j["duals"] = std::move(duals);
  json fusion = json::array();
  json R = json::array(), Rinv = json::array();
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        if (cat.N(a, b, c)) fusion.push_back({{"idx", {nm(a), nm(b), nm(c)}}, {"N", cat.N(a, b, c)}});
        if (!cat.R(a, b, c).is_zero()) R.push_back({{"idx", {nm(a), nm(b), nm(c)}}, {"value", to_json(cat.R(a, b, c))}});
        if (!cat.Rinv(a, b, c).is_zero()) Rinv.push_back({{"idx", {nm(a), nm(b), nm(c)}}, {"value", to_json(cat.Rinv(a, b, c))}});
      }
  j["fusion"] = std::move(fusion);
  j["qdim"] = std::move(qdim);
  j["twist"] = std::move(twist);
  json F = json::array(), G = json::array();
  for (int i = 0; i < r; ++i)
    for (int k1 = 0; k1 < r; ++k1)
      for (int k2 = 0; k2 < r; ++k2)
        for (int l = 0; l < r; ++l)
          for (int p = 0; p < r; ++p)
            for (int q = 0; q < r; ++q) {
              const json idx = {nm(i), nm(k1), nm(k2), nm(l), nm(p), nm(q)};
              if (!cat.F(i, k1, k2, l, p, q).is_zero()) F.push_back({{"idx", idx}, {"value", to_json(cat.F(i, k1, k2, l, p, q))}});
              if (!cat.G(i, k1, k2, l, p, q).is_zero()) G.push_back({{"idx", idx}, {"value", to_json(cat.G(i, k1, k2, l, p, q))}});
            }
  j["F"] = std::move(F);
  j["G"] = std::move(G);
  j["R"] = std::move(R);
  j["Rinv"] = std::move(Rinv);
  return j;
}

inline FusionCategoryData category_from_json(const json& j) {
  try {
    const auto objects = j.at("objects").get<std::vector<std::string>>();
    FusionCategoryData probe(objects);
    FusionCategoryData cat(objects, probe.index_of(j.at("unit").get<std::string>()));
    const auto id = [&](const json& v) { return cat.index_of(v.get<std::string>()); };
    if (j.contains("descriptor")) cat.set_descriptor(j.at("descriptor").get<std::string>());
    for (const auto& e : j.at("fusion")) {
      const auto& ix = e.at("idx");
      cat.set_fusion(id(ix.at(0)), id(ix.at(1)), id(ix.at(2)), e.at("N").get<int>());
    }
    for (const auto& [k, v] : j.at("duals").items()) cat.set_dual(cat.index_of(k), id(v));
    for (const auto& [k, v] : j.at("qdim").items()) cat.set_qdim(cat.index_of(k), cyclo_from_json(v));
    for (const auto& [k, v] : j.at("twist").items()) cat.set_twist(cat.index_of(k), cyclo_from_json(v));
    for (const auto& e : j.at("F")) {
      const auto& ix = e.at("idx");
      cat.set_F(id(ix.at(0)), id(ix.at(1)), id(ix.at(2)), id(ix.at(3)), id(ix.at(4)), id(ix.at(5)), cyclo_from_json(e.at("value")));
    }
    for (const auto& e : j.at("G")) {
      const auto& ix = e.at("idx");
      cat.set_G(id(ix.at(0)), id(ix.at(1)), id(ix.at(2)), id(ix.at(3)), id(ix.at(4)), id(ix.at(5)), cyclo_from_json(e.at("value")));
    }
    for (const auto& e : j.at("R")) {
      const auto& ix = e.at("idx");
      cat.set_R(id(ix.at(0)), id(ix.at(1)), id(ix.at(2)), cyclo_from_json(e.at("value")));
    }
    if (j.contains("Rinv")) {
      for (const auto& e : j.at("Rinv")) {
        const auto& ix = e.at("idx");
        cat.set_Rinv(id(ix.at(0)), id(ix.at(1)), id(ix.at(2)), cyclo_from_json(e.at("value")));
      }
    } else {
      cat.derive_Rinv();
    }
    cat.validate();
    return cat;
  } catch (const json::exception& e) {
    throw format_error(std::string("malformed category JSON: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw format_error("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw format_error("'" + path + "' is not valid JSON: " + e.what());
  }
}

/// "trivial", "ising:<m>:<+1|-1>" (built at conductor 48), or a JSON file path.
inline FusionCategoryData resolve_category(const std::string& spec) {
  if (spec == "trivial") return trivial_category();
  if (spec.rfind("ising:", 0) == 0) {
    const auto second = spec.find(':', 6);
    if (second == std::string::npos) throw format_error("category spec must be ising:<m>:<+1|-1>");
    try {
      const int m = std::stoi(spec.substr(6, second - 6));
      const int eps = std::stoi(spec.substr(second + 1));
      return build_ising(IsingParams{m, eps}, 48);
    } catch (const std::invalid_argument& e) {
      throw format_error("bad Ising spec '" + spec + "': " + e.what());
    }
  }
  return category_from_json(read_json_file(spec));
}

// ---------------------------------------------------------------------------
// Orbifold data

inline json to_json(const OrbifoldAnsatz& ans, const FusionCategoryData& cat) {
  json j;
  j["labels"] = ans.labels();
  j["unit"] = ans.iota() ? json(ans.label(*ans.iota())) : json(nullptr);
  json t = json::array();
  const int n = ans.size();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (ans.t(a, b, c) != kZero) t.push_back({{"idx", {ans.label(a), ans.label(b), ans.label(c)}}, {"object", cat.name(ans.t(a, b, c))}});
      }
  j["t"] = std::move(t);
  return j;
}

inline OrbifoldAnsatz ansatz_from_json(const json& j, const FusionCategoryData& cat) {
  OrbifoldAnsatz ans(j.at("labels").get<std::vector<std::string>>());
  const auto lb = [&](const json& v) { return ans.index_of(v.get<std::string>()); };
  for (const auto& e : j.at("t")) {
    const auto& ix = e.at("idx");
    ans.set_t(lb(ix.at(0)), lb(ix.at(1)), lb(ix.at(2)), cat.index_of(e.at("object").get<std::string>()));
  }
  if (j.contains("unit") && !j.at("unit").is_null()) ans.set_iota(lb(j.at("unit")));
  ans.validate(cat);
  return ans;
}

/// The category is written by descriptor when it can be rebuilt from one, and
/// inline otherwise.
inline json to_json(const OrbifoldDatum& d) {
  const auto& cat = d.category();
  json j;
  const auto& desc = cat.descriptor();
  if (desc == "trivial" || desc.rfind("ising:", 0) == 0)
    j["category"] = desc;
  else
    j["category"] = to_json(cat);
  j["ansatz"] = to_json(d.ansatz(), cat);
  json f = json::array(), g = json::array();
  d.for_each_key([&](int a, int b, int c, int dd, int p, int q, int i) {
    const auto rec = [&](const Cyclo& v) {
      json idx = json::array();
      for (int x : {a, b, c, dd, p, q}) idx.push_back(d.ansatz().label(x));
      return json{{"idx", std::move(idx)}, {"i", cat.name(i)}, {"value", to_json(v)}};
    };
    if (!d.f(a, b, c, dd, p, q, i).is_zero()) f.push_back(rec(d.f(a, b, c, dd, p, q, i)));
    if (!d.g(a, b, c, dd, p, q, i).is_zero()) g.push_back(rec(d.g(a, b, c, dd, p, q, i)));
  });
  j["f"] = std::move(f);
  j["g"] = std::move(g);
  json psi2 = json::object();
  for (int a = 0; a < d.nB(); ++a) psi2[d.ansatz().label(a)] = to_json(d.psi2(a));
  j["psi2"] = std::move(psi2);
  j["phi2"] = to_json(d.phi2());
  return j;
}

/// `category` overrides the datum's own category reference when given.
inline OrbifoldDatum datum_from_json(const json& j, std::shared_ptr<const FusionCategoryData> category = nullptr) {
  try {
    if (!category) {
      const auto& c = j.at("category");
      category = std::make_shared<const FusionCategoryData>(c.is_string() ? resolve_category(c.get<std::string>()) : category_from_json(c));
    }
    const auto& cat = *category;
    OrbifoldDatum d(category, ansatz_from_json(j.at("ansatz"), cat));
    const auto lb = [&](const json& v) { return d.ansatz().index_of(v.get<std::string>()); };
    const auto load = [&](const json& arr, bool is_f) {
      for (const auto& e : arr) {
        const auto& ix = e.at("idx");
        const int a = lb(ix.at(0)), b = lb(ix.at(1)), c = lb(ix.at(2)), dd = lb(ix.at(3)), p = lb(ix.at(4)), q = lb(ix.at(5));
        const ObjectId i = cat.index_of(e.at("i").get<std::string>());
        Cyclo v = cyclo_from_json(e.at("value"));
        if (is_f)
          d.set_f(a, b, c, dd, p, q, i, std::move(v));
        else
          d.set_g(a, b, c, dd, p, q, i, std::move(v));
      }
    };
    load(j.at("f"), true);
    if (j.contains("g")) {
      load(j.at("g"), false);
    } else {
      d = derive_g(d);
    }
    for (const auto& [k, v] : j.at("psi2").items()) d.set_psi2(d.ansatz().index_of(k), cyclo_from_json(v));
    d.set_phi2(cyclo_from_json(j.at("phi2")));
    return d;
  } catch (const json::exception& e) {
    throw format_error(std::string("malformed datum JSON: ") + e.what());
  }
}

}  // namespace orbikit
