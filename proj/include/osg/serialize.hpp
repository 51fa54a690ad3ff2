#pragma once

// JSON documents: multiplication table cache, deformation specs and
// certificates. Scalars are always strings ("3", "-1/2"); indices and
// exponents are plain integers.

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "osg/certifier.hpp"
#include "osg/deformation.hpp"
#include "osg/ring.hpp"

namespace osg {

using json = nlohmann::json;

inline constexpr int kTableFormatVersion = 1;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(PartitionIndex p) { return json::array({p.first, p.second}); }

inline PartitionIndex index_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw FormatError("expected [int, int] index, got " + j.dump());
  return {j[0].get<int>(), j[1].get<int>()};
}

inline Rational rational_from_json(const json& j) {
  if (!j.is_string()) throw FormatError("expected rational string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

inline json terms_to_json(const ClassVector& v) {
  json terms = json::array();
  for (const auto& [nu, p] : v.terms())
    for (const auto& [d, c] : p.terms()) terms.push_back({{"nu", to_json(nu)}, {"d", d}, {"coeff", to_string(c)}});
  return terms;
}

inline ClassVector terms_from_json(int n, const json& terms, bool integral) {
  ClassVector v(n);
  if (!terms.is_array()) throw FormatError("terms must be an array");
  for (const auto& term : terms) {
    const auto nu = index_from_json(term.at("nu"));
    if (!is_valid(n, nu)) throw FormatError("index " + to_string(nu) + " not valid");
    const int d = term.at("d").get<int>();
    if (d < 0) throw FormatError("negative q exponent");
    const Rational c = rational_from_json(term.at("coeff"));
    if (integral && !is_integer(c)) throw FormatError("non-integral coefficient " + to_string(c));
    if (v.coefficient(nu, d) != 0) throw FormatError("duplicate term");
    v.add(nu, QPolynomial::monomial(d, c));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Multiplication table

inline json table_to_json(const MultiplicationTable& t) {
  json doc;
  doc["version"] = kTableFormatVersion;
  doc["n"] = t.rank();
  json basis = json::array();
  for (const auto& p : t.basis()) basis.push_back(to_json(p));
  doc["basis"] = std::move(basis);

  json products = json::array();
  const auto& b = t.basis();
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = i; j < b.size(); ++j)
      products.push_back({{"lambda", to_json(b[i])}, {"mu", to_json(b[j])}, {"terms", terms_to_json(t.product(b[i], b[j]))}});
  doc["products"] = std::move(products);

  json generators = json::array();
  for (const auto& lam : b) {
    json terms = json::array();
    for (const auto& [m, p] : t.generator_expressions().at(lam))
      for (const auto& [k, c] : p.terms())
        terms.push_back({{"tau1", m.tau1_power}, {"tau11", m.tau11_power}, {"q", k}, {"coeff", to_string(c)}});
    generators.push_back({{"lambda", to_json(lam)}, {"terms", std::move(terms)}});
  }
  doc["generators"] = std::move(generators);
  return doc;
}

/// Full re-validation of a loaded table against the Pieri rules: generator
/// expressions must evaluate to their basis classes, every stored product must
/// equal the generator expression applied through the Pieri operators (from
/// both sides), and the unit and Pieri columns must be exact.
inline void revalidate_table(const MultiplicationTable& t) {
  check_structural_invariants(t);
  const int n = t.rank();
  for (const auto& lam : t.basis()) {
    if (apply_generator_expression(t.generator_expressions().at(lam), ClassVector::basis(n, kUnitIndex)) !=
        ClassVector::basis(n, lam))
      throw TableInvariantError("generator expression does not evaluate to " + to_string(lam));
    if (t.product(kUnitIndex, lam) != ClassVector::basis(n, lam)) throw TableInvariantError("unit law fails");
    if (t.product(kTau1, lam) != pieri_tau1(n, lam)) throw TableInvariantError("tau_1 column disagrees with Pieri");
    if (t.product(kTau11, lam) != pieri_tau11(n, lam)) throw TableInvariantError("tau_11 column disagrees with Pieri");
  }
  for (const auto& lam : t.basis())
    for (const auto& mu : t.basis())
      if (lam <= mu && (t.product_via_generators(lam, mu) != t.product(lam, mu) ||
                        t.product_via_generators(mu, lam) != t.product(lam, mu)))
        throw TableInvariantError("product " + to_string(lam) + "*" + to_string(mu) + " disagrees with generators");
}

inline MultiplicationTable table_from_json(const json& doc, bool revalidate = false) {
  try {
    if (doc.at("version").get<int>() != kTableFormatVersion) throw FormatError("unsupported table version");
    const int n = doc.at("n").get<int>();
    require_ring_rank(n);
    const auto basis = enumerate_basis(n);
    const auto& jb = doc.at("basis");
    if (!jb.is_array() || jb.size() != basis.size()) throw FormatError("basis size mismatch");
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (index_from_json(jb[i]) != basis[i]) throw FormatError("basis order mismatch at " + std::to_string(i));

    std::vector<ClassVector> upper;
    const auto& jp = doc.at("products");
    if (!jp.is_array() || jp.size() != basis.size() * (basis.size() + 1) / 2)
      throw FormatError("wrong number of products");
    std::size_t k = 0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = i; j < basis.size(); ++j, ++k) {
        const auto& entry = jp[k];
        if (index_from_json(entry.at("lambda")) != basis[i] || index_from_json(entry.at("mu")) != basis[j])
          throw FormatError("products out of order at entry " + std::to_string(k));
        upper.push_back(terms_from_json(n, entry.at("terms"), true));
      }
    }

    std::map<PartitionIndex, GeneratorExpression> generators;
    for (const auto& entry : doc.at("generators")) {
      const auto lam = index_from_json(entry.at("lambda"));
      GeneratorExpression expr;
      for (const auto& term : entry.at("terms")) {
        OperatorMonomial m{term.at("tau1").get<int>(), term.at("tau11").get<int>()};
        if (m.tau1_power < 0 || m.tau11_power < 0) throw FormatError("negative operator exponent");
        expr[m] += QPolynomial::monomial(term.at("q").get<int>(), rational_from_json(term.at("coeff")));
      }
      generators.emplace(lam, std::move(expr));
    }
    auto t = MultiplicationTable::from_parts(n, std::move(upper), std::move(generators));
    if (revalidate) revalidate_table(t);
    return t;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed table document: ") + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << doc.dump(1) << '\n';
  if (!out) throw std::runtime_error("failed writing " + path);
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Deformation spec

inline json spec_to_json(const DeformationSpec& spec) {
  json entries = json::array();
  if (spec.mode() == DeformationMode::kPerPair) {
    for (const auto& [key, a] : spec.pair_coefficients())
      entries.push_back({{"lambda", to_json(key.first)}, {"mu", to_json(key.second)}, {"a", to_string(a)}});
  } else {
    for (const auto& [mu, a] : spec.shared_coefficients()) entries.push_back({{"mu", to_json(mu)}, {"a", to_string(a)}});
  }
  return {{"n", spec.rank()}, {"mode", std::string(to_string(spec.mode()))}, {"entries", std::move(entries)}};
}

inline DeformationSpec spec_from_json(const json& doc) {
  try {
    const int n = doc.at("n").get<int>();
    const auto mode = parse_deformation_mode(doc.value("mode", std::string("per-pair")));
    DeformationSpec spec(n, mode);
    std::set<std::pair<PartitionIndex, PartitionIndex>> seen_pairs;
    std::map<PartitionIndex, Rational> seen_shared;
    for (const auto& e : doc.at("entries")) {
      const auto mu = index_from_json(e.at("mu"));
      const Rational a = rational_from_json(e.at("a"));
      const int j = e.value("j", 1);
      if (mode == DeformationMode::kPerPair) {
        const auto lam = index_from_json(e.at("lambda"));
        if (!seen_pairs.insert({lam, mu}).second) throw FormatError("duplicate entry for " + to_string(lam) + ", " + to_string(mu));
        spec.set(lam, mu, a, j);
      } else {
        if (auto it = seen_shared.find(mu); it != seen_shared.end() && it->second != a)
          throw FormatError("per-mu spec gives two values for " + to_string(mu));
        seen_shared[mu] = a;
        spec.set_shared(mu, a, j);
      }
    }
    return spec;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed deformation spec: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Certificate

inline json unknown_to_json(const UnknownRegistry& reg, UnknownId id) {
  const auto& key = reg.key(id);
  json j{{"id", id.value}, {"name", to_string(key)}, {"mu", to_json(key.mu)}};
  if (key.lambda) j["lambda"] = to_json(*key.lambda);
  return j;
}

inline json affine_to_json(const AffineExpression& e) {
  json linear = json::array();
  for (const auto& [id, c] : e.linear()) linear.push_back({{"unknown", id.value}, {"coeff", to_string(c)}});
  return {{"constant", to_string(e.constant())}, {"linear", std::move(linear)}};
}

inline AffineExpression affine_from_json(const json& j, std::size_t unknown_count) {
  AffineExpression e(rational_from_json(j.at("constant")));
  for (const auto& term : j.at("linear")) {
    const auto id = term.at("unknown").get<std::uint32_t>();
    if (id >= unknown_count) throw FormatError("unknown id out of range");
    e.add_linear(UnknownId{id}, rational_from_json(term.at("coeff")));
  }
  return e;
}

inline json optional_rational(const std::optional<Rational>& r) { return r ? json(to_string(*r)) : json(nullptr); }

inline json certificate_to_json(const ConstraintSystem& sys, const Certificate& cert) {
  json doc;
  doc["n"] = cert.n;
  doc["mode"] = std::string(to_string(cert.mode));
  doc["conclusion"] = std::string(to_string(cert.conclusion));
  json unknowns = json::array();
  for (std::uint32_t k = 0; k < sys.unknowns.size(); ++k) unknowns.push_back(unknown_to_json(sys.unknowns, UnknownId{k}));
  doc["unknowns"] = std::move(unknowns);

  json intervals = json::array();
  for (std::size_t k = 0; k < cert.intervals.size(); ++k)
    intervals.push_back(
        {{"unknown", k}, {"lower", optional_rational(cert.intervals[k].lower)}, {"upper", optional_rational(cert.intervals[k].upper)}});
  doc["intervals"] = std::move(intervals);

  json bounds = json::array();
  for (const auto& b : cert.bounds) {
    json weights = json::array();
    for (const auto& [i, w] : b.weights) weights.push_back({{"constraint", i}, {"weight", to_string(w)}});
    bounds.push_back({{"unknown", b.unknown.value},
                      {"direction", std::string(to_string(b.direction))},
                      {"bound", to_string(b.bound)},
                      {"weights", std::move(weights)}});
  }
  doc["bounds"] = std::move(bounds);

  json witness = json::array();
  for (const auto& w : cert.witness) witness.push_back(to_string(w));
  doc["witness"] = std::move(witness);

  json trace = json::array();
  for (std::size_t k = 0; k < cert.trace.size(); ++k)
    trace.push_back({{"unknown", k},
                     {"eliminated", cert.trace[k].unknowns_eliminated},
                     {"peak_constraints", cert.trace[k].peak_constraints},
                     {"generated_constraints", cert.trace[k].generated_constraints}});
  doc["trace"] = std::move(trace);

  json dump = json::array();
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    const auto& c = sys.constraints[i];
    json entry = affine_to_json(c.expr);
    entry["index"] = i;
    entry["text"] = to_string(c.expr, &sys.unknowns) + " >= 0";
    entry["provenance"] = {{"mu", to_json(c.provenance.mu)}, {"nu", to_json(c.provenance.nu)}, {"d", c.provenance.d}};
    dump.push_back(std::move(entry));
  }
  doc["constraint_dump"] = std::move(dump);
  return doc;
}

/// Reads back both the constraint system and the certificate so the pair can
/// be checked with verify_certificate without rebuilding anything.
inline std::pair<ConstraintSystem, Certificate> certificate_from_json(const json& doc) {
  try {
    ConstraintSystem sys;
    Certificate cert;
    sys.n = cert.n = doc.at("n").get<int>();
    sys.mode = cert.mode = parse_deformation_mode(doc.at("mode").get<std::string>());
    const auto conclusion = doc.at("conclusion").get<std::string>();
    if (conclusion != "UniqueZero" && conclusion != "NotUnique") throw FormatError("bad conclusion");
    cert.conclusion = conclusion == "UniqueZero" ? Conclusion::kUniqueZero : Conclusion::kNotUnique;
    for (const auto& u : doc.at("unknowns")) {
      UnknownKey key{std::nullopt, index_from_json(u.at("mu"))};
      if (u.contains("lambda")) key.lambda = index_from_json(u.at("lambda"));
      sys.unknowns.intern(key);
    }
    const std::size_t k_count = sys.unknowns.size();
    for (const auto& c : doc.at("constraint_dump")) {
      const auto& p = c.at("provenance");
      sys.constraints.push_back({affine_from_json(c, k_count),
                                 {index_from_json(p.at("mu")), index_from_json(p.at("nu")), p.at("d").get<int>()}});
    }
    for (const auto& iv : doc.at("intervals")) {
      Interval v;
      if (!iv.at("lower").is_null()) v.lower = rational_from_json(iv.at("lower"));
      if (!iv.at("upper").is_null()) v.upper = rational_from_json(iv.at("upper"));
      cert.intervals.push_back(v);
    }
    for (const auto& b : doc.at("bounds")) {
      BoundProof p;
      p.unknown = UnknownId{b.at("unknown").get<std::uint32_t>()};
      const auto dir = b.at("direction").get<std::string>();
      if (dir != "upper" && dir != "lower") throw FormatError("bad bound direction");
      p.direction = dir == "upper" ? BoundDirection::kUpper : BoundDirection::kLower;
      p.bound = rational_from_json(b.at("bound"));
      for (const auto& w : b.at("weights")) p.weights.emplace_back(w.at("constraint").get<std::size_t>(), rational_from_json(w.at("weight")));
      cert.bounds.push_back(std::move(p));
    }
    for (const auto& w : doc.at("witness")) cert.witness.push_back(rational_from_json(w));
    return {std::move(sys), std::move(cert)};
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace osg
