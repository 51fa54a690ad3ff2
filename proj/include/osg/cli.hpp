#pragma once

// The osg command-line tool. run() is the whole program; main() only forwards
// argv so that tests can drive the tool in-process.
//
// Every command renders from one computed result into text, json or latex, and
// nothing reaches the output stream until the command has finished.
// Exit codes: 0 success, 1 mathematical failure, 2 usage error.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "osg/certifier.hpp"
#include "osg/deformation.hpp"
#include "osg/expression.hpp"
#include "osg/lemma23.hpp"
#include "osg/pieri.hpp"
#include "osg/replay.hpp"
#include "osg/ring.hpp"
#include "osg/serialize.hpp"

namespace osg::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMathFailure = 1;
inline constexpr int kExitUsage = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when a computation finishes but the mathematical check it ran fails
/// or cannot be decided.
class MathFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Result {
  int code = kExitOk;
  json doc;
  std::string text;
  std::string latex;
};

// ---------------------------------------------------------------------------
// Rendering

inline std::string latex_rational(const Rational& r) {
  if (is_integer(r)) return r.get_num().get_str();
  const std::string sign = r < 0 ? "-" : "";
  return sign + "\\frac{" + mpz_class(abs(r.get_num())).get_str() + "}{" + r.get_den().get_str() + "}";
}

inline std::string latex_index(PartitionIndex p) {
  return "\\tau_{" + std::to_string(p.first) + "," + std::to_string(p.second) + "}";
}

inline std::string latex_q(int d) {
  if (d == 0) return "";
  return d == 1 ? "q" : "q^{" + std::to_string(d) + "}";
}

inline std::string latex_class(const ClassVector& v) {
  std::string out;
  for (const auto& [nu, p] : v.terms()) {
    for (const auto& [d, c] : p.terms()) {
      const bool neg = c < 0;
      const Rational mag = neg ? Rational(-c) : c;
      if (out.empty()) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      if (mag != 1) out += latex_rational(mag) + (d > 0 ? " " : "");
      out += latex_q(d) + (d > 0 ? " " : "") + latex_index(nu);
    }
  }
  return out.empty() ? "0" : out;
}

inline std::string text_class(const ClassVector& v) { return v.is_zero() ? "0" : to_string(v); }

// ---------------------------------------------------------------------------
// Arguments and table access

inline PartitionIndex parse_index_arg(const std::string& s, const std::string& what) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw UsageError(what + " must look like A,B (got '" + s + "')");
  auto parse_int = [&](std::string part) {
    part.erase(std::remove_if(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); }), part.end());
    int v = 0;
    auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (part.empty() || ec != std::errc() || p != part.data() + part.size())
      throw UsageError(what + " must look like A,B (got '" + s + "')");
    return v;
  };
  return {parse_int(s.substr(0, comma)), parse_int(s.substr(comma + 1))};
}

inline void require_index(int n, PartitionIndex p, const std::string& what) {
  if (!is_valid(n, p)) throw UsageError(what + " " + to_string(p) + " is not a basis index at n=" + std::to_string(n));
}

inline void require_rank(int n) {
  if (n < 3) throw UsageError("--n must be at least 3 (got " + std::to_string(n) + ")");
}

inline std::optional<std::filesystem::path> default_cache_path(int n) {
  const char* dir = std::getenv("OSG_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  return std::filesystem::path(dir) / ("table-n" + std::to_string(n) + ".json");
}

inline std::string serialize_table(const MultiplicationTable& t) { return table_to_json(t).dump(1) + "\n"; }

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw UsageError("cannot write " + path.string());
}

/// The table for rank n, read from the default cache when one is configured
/// and written back there after a fresh build. A cache file that fails to
/// load is rebuilt and replaced.
inline MultiplicationTable obtain_table(int n, std::ostream& err) {
  require_rank(n);
  const auto path = default_cache_path(n);
  if (path && std::filesystem::exists(*path)) {
    try {
      auto t = table_from_json(json::parse(read_file(*path)), false);
      check_structural_invariants(t);
      if (t.rank() == n) return t;
      err << "warning: " << path->string() << " holds rank " << t.rank() << ", rebuilding\n";
    } catch (const std::exception& e) {
      err << "warning: ignoring cache " << path->string() << ": " << e.what() << "\n";
    }
  }
  auto t = build_table(n);
  if (path) {
    try {
      write_file(*path, serialize_table(t));
    } catch (const std::exception& e) {
      err << "warning: could not write cache: " << e.what() << "\n";
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Commands

inline Result cmd_basis(int n, std::optional<int> degree) {
  if (n < 2) throw UsageError("--n must be at least 2");
  const auto basis = degree ? enumerate_degree(n, *degree) : enumerate_basis(n);
  Result r;
  json idx = json::array();
  std::vector<std::string> latex;
  for (const auto& p : basis) {
    idx.push_back(to_json(p));
    r.text += to_string(p) + "\n";
    latex.push_back(latex_index(p));
  }
  r.doc = {{"command", "basis"}, {"n", n}, {"degree", degree ? json(*degree) : json(nullptr)}, {"size", basis.size()}, {"basis", idx}};
  if (!degree) {
    json betti = json::array();
    for (int d = 0; d <= 4 * n - 3; ++d) betti.push_back(enumerate_degree(n, d).size());
    r.doc["betti"] = betti;
  }
  for (std::size_t i = 0; i < latex.size(); ++i) r.latex += (i ? ",\\ " : "") + latex[i];
  r.latex += "\n";
  return r;
}

inline Result cmd_mult(int n, const std::string& src, std::ostream& err) {
  require_rank(n);
  ExprNode e;
  try {
    e = parse_expression(src);
  } catch (const ParseError& pe) {
    err << src << "\n" << std::string(pe.offset(), ' ') << "^\n";
    throw UsageError(pe.what());
  }
  const auto t = obtain_table(n, err);
  ClassVector v(n);
  try {
    v = evaluate_expression(t, e);
  } catch (const std::invalid_argument& ia) {
    throw UsageError(ia.what());
  }
  Result r;
  r.text = text_class(v) + "\n";
  r.latex = latex_class(v) + "\n";
  r.doc = {{"command", "mult"}, {"n", n}, {"expression", print_expression(e)}, {"result", terms_to_json(v)}, {"text", text_class(v)}};
  return r;
}

inline Result cmd_pieri(int n, const std::string& which, PartitionIndex lam) {
  require_rank(n);
  require_index(n, lam, "--with");
  const bool one = which == "1";
  const ClassVector v = pieri(one ? PieriClass::kTau1 : PieriClass::kTau11, n, lam);
  const std::string pieri_case(one ? to_string(classify_tau1(n, lam)) : to_string(classify_tau11(n, lam)));
  Result r;
  r.text = text_class(v) + "\n";
  r.latex = latex_index(one ? kTau1 : kTau11) + " \\star " + latex_index(lam) + " = " + latex_class(v) + "\n";
  r.doc = {{"command", "pieri"}, {"n", n},         {"class", which},           {"with", to_json(lam)},
           {"case", pieri_case},  {"result", terms_to_json(v)}, {"text", text_class(v)}};
  return r;
}

inline Result cmd_gw(int n, PartitionIndex lam, PartitionIndex mu, PartitionIndex nu, int d, std::ostream& err) {
  require_rank(n);
  require_index(n, lam, "--lambda");
  require_index(n, mu, "--mu");
  require_index(n, nu, "--nu");
  if (d < 0) throw UsageError("--d must be nonnegative");
  const auto t = obtain_table(n, err);
  const Rational value = gw_constant(t, lam, mu, nu, d);
  Result r;
  r.text = to_string(value) + "\n";
  r.latex = latex_rational(value) + "\n";
  r.doc = {{"command", "gw"}, {"n", n}, {"lambda", to_json(lam)}, {"mu", to_json(mu)}, {"nu", to_json(nu)}, {"d", d},
           {"value", to_string(value)}};
  return r;
}

struct AssocOptions {
  std::size_t samples = 10000;
  unsigned seed = 1;
  std::size_t exhaustive_limit = 40000;  // triples
};

inline Result suite_lemma23(const MultiplicationTable& t) {
  Result r;
  bool all = true;
  json parts = json::array();
  r.latex = "\\begin{tabular}{lrr}\npart & instances & counterexamples \\\\\n";
  for (auto part : kAllLemma23Parts) {
    const auto rep = verify_lemma23(t, part);
    all = all && rep.holds;
    json ce = json::array();
    for (std::size_t i = 0; i < rep.counterexamples.size() && i < 10; ++i) {
      const auto& c = rep.counterexamples[i];
      ce.push_back({{"instance", c.instance}, {"expected", text_class(c.expected)}, {"actual", text_class(c.actual)}});
      r.text += "  counterexample " + c.instance + ": expected " + text_class(c.expected) + ", got " + text_class(c.actual) + "\n";
    }
    parts.push_back({{"part", std::string(to_string(part))},
                     {"holds", rep.holds},
                     {"instances", rep.instances_checked},
                     {"counterexamples", rep.counterexamples.size()},
                     {"examples", ce}});
    r.text += "part " + std::string(to_string(part)) + ": " + (rep.holds ? "holds" : "FAILS") + " (" +
              std::to_string(rep.instances_checked) + " instances, " + std::to_string(rep.counterexamples.size()) +
              " counterexamples)\n";
    r.latex += std::string(to_string(part)) + " & " + std::to_string(rep.instances_checked) + " & " +
               std::to_string(rep.counterexamples.size()) + " \\\\\n";
  }
  r.latex += "\\end{tabular}\n";
  r.doc = {{"parts", parts}};
  r.code = all ? kExitOk : kExitMathFailure;
  return r;
}

inline Result suite_assoc(const MultiplicationTable& t, const AssocOptions& opts) {
  const auto& b = t.basis();
  const int n = t.rank();
  std::size_t unit_fail = 0, comm_fail = 0, assoc_fail = 0, triples = 0;
  for (const auto& lam : b) {
    if (t.product(kUnitIndex, lam) != ClassVector::basis(n, lam)) ++unit_fail;
    for (const auto& mu : b)
      if (lam < mu && t.product_via_generators(lam, mu) != t.product_via_generators(mu, lam)) ++comm_fail;
  }
  json first_failure = nullptr;
  auto check = [&](PartitionIndex x, PartitionIndex y, PartitionIndex z) {
    ++triples;
    const ClassVector left = multiply(t, t.product(x, y), ClassVector::basis(n, z));
    const ClassVector right = multiply(t, ClassVector::basis(n, x), t.product(y, z));
    if (left != right) {
      if (assoc_fail++ == 0) first_failure = json::array({to_json(x), to_json(y), to_json(z)});
    }
  };
  const std::size_t total = b.size() * b.size() * b.size();
  const bool exhaustive = total <= opts.exhaustive_limit;
  if (exhaustive) {
    for (const auto& x : b)
      for (const auto& y : b)
        for (const auto& z : b) check(x, y, z);
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<std::size_t> pick(0, b.size() - 1);
    for (std::size_t i = 0; i < opts.samples; ++i) check(b[pick(rng)], b[pick(rng)], b[pick(rng)]);
  }
  Result r;
  r.code = unit_fail + comm_fail + assoc_fail == 0 ? kExitOk : kExitMathFailure;
  r.doc = {{"unit_failures", unit_fail},
           {"commutativity_failures", comm_fail},
           {"associativity_failures", assoc_fail},
           {"triples", triples},
           {"exhaustive", exhaustive},
           {"seed", exhaustive ? json(nullptr) : json(opts.seed)},
           {"first_failure", first_failure}};
  std::ostringstream s;
  s << "unit: " << (unit_fail ? "FAILS" : "holds") << "\n"
    << "commutativity: " << (comm_fail ? "FAILS" : "holds") << " (" << b.size() * (b.size() - 1) / 2 << " pairs)\n"
    << "associativity: " << (assoc_fail ? "FAILS" : "holds") << " (" << triples << (exhaustive ? " triples, exhaustive" : " random triples")
    << ", " << assoc_fail << " failures)\n";
  r.text = s.str();
  return r;
}

inline Result suite_pairing(const MultiplicationTable& t) {
  Result r;
  bool all = true;
  json degrees = json::array();
  const int top = 4 * t.rank() - 3;
  for (int d = 0; d <= top; ++d) {
    const auto m = pairing_matrix(t, d);
    const std::size_t cols = enumerate_degree(t.rank(), top - d).size();
    const std::size_t rk = linalg::rank(m);
    const bool ok = m.size() == cols && rk == m.size();
    all = all && ok;
    degrees.push_back({{"degree", d}, {"size", m.size()}, {"rank", rk}, {"nondegenerate", ok}});
    r.text += "degree " + std::to_string(d) + ": " + std::to_string(m.size()) + "x" + std::to_string(cols) + ", rank " +
              std::to_string(rk) + (ok ? "" : "  DEGENERATE") + "\n";
  }
  r.doc = {{"degrees", degrees}};
  r.code = all ? kExitOk : kExitMathFailure;
  return r;
}

inline Result suite_betti(int n) {
  const int top = 4 * n - 3;
  std::vector<std::size_t> betti;
  for (int d = 0; d <= top; ++d) betti.push_back(enumerate_degree(n, d).size());
  bool symmetric = true;
  for (int d = 0; d <= top; ++d) symmetric = symmetric && betti[d] == betti[top - d];
  const auto top_classes = enumerate_degree(n, top);
  const bool unique_top = top_classes.size() == 1 && top_classes[0] == Rank(n).top_class();
  Result r;
  r.code = symmetric && unique_top ? kExitOk : kExitMathFailure;
  r.doc = {{"betti", betti},
           {"size", enumerate_basis(n).size()},
           {"symmetric", symmetric},
           {"unique_top_class", unique_top},
           {"top_class", to_json(Rank(n).top_class())}};
  std::string profile;
  for (std::size_t i = 0; i < betti.size(); ++i) profile += (i ? "," : "") + std::to_string(betti[i]);
  r.text = "betti: (" + profile + ")\nsize: " + std::to_string(enumerate_basis(n).size()) +
           "\nsymmetric: " + (symmetric ? "yes" : "no") + "\nunique top class " + to_string(Rank(n).top_class()) + ": " +
           (unique_top ? "yes" : "no") + "\n";
  return r;
}

inline Result suite_negativity(const MultiplicationTable& t) {
  Result r;
  NegativeWitness w;
  if (has_negative_constant(t, &w)) {
    r.doc = {{"found", true},
             {"witness", {{"lambda", to_json(w.lambda)}, {"mu", to_json(w.mu)}, {"nu", to_json(w.nu)}, {"d", w.d}, {"value", to_string(w.value)}}}};
    r.text = "negative constant: coefficient of q^" + std::to_string(w.d) + " " + to_string(w.nu) + " in " + to_string(w.lambda) +
             "*" + to_string(w.mu) + " is " + to_string(w.value) + "\n";
  } else {
    r.doc = {{"found", false}, {"witness", nullptr}};
    r.text = "no negative structure constant\n";
    r.code = kExitMathFailure;
  }
  return r;
}

inline Result cmd_verify(int n, const std::string& suite, const AssocOptions& assoc, std::ostream& err) {
  require_rank(n);
  Result r;
  if (suite == "betti") {
    r = suite_betti(n);
  } else {
    const auto t = obtain_table(n, err);
    if (suite == "lemma23") r = suite_lemma23(t);
    else if (suite == "assoc") r = suite_assoc(t, assoc);
    else if (suite == "pairing") r = suite_pairing(t);
    else r = suite_negativity(t);
  }
  const bool passed = r.code == kExitOk;
  r.doc = {{"command", "verify"}, {"n", n}, {"suite", suite}, {"passed", passed}, {"details", r.doc}};
  r.text = "suite " + suite + " at n=" + std::to_string(n) + ": " + (passed ? "PASSED" : "FAILED") + "\n" + r.text;
  if (r.latex.empty()) r.latex = "\\begin{verbatim}\n" + r.text + "\\end{verbatim}\n";
  return r;
}

struct CertifyArgs {
  int n = 0;
  std::string mode = "per-pair";
  std::string method = "fm";
  std::string emit_path;
  std::size_t max_constraints = CertifyOptions{}.max_constraints;
};

inline Result cmd_certify(const CertifyArgs& a, std::ostream& err) {
  require_rank(a.n);
  const auto mode = parse_deformation_mode(a.mode);
  const bool run_fm = a.method != "replay";
  const bool run_replay = a.method != "fm";
  if (!a.emit_path.empty() && !run_fm) throw UsageError("--emit-certificate needs --method fm or both");
  const auto t = obtain_table(a.n, err);

  Result r;
  r.doc = {{"command", "certify"}, {"n", a.n}, {"mode", a.mode}, {"method", a.method}};
  std::vector<std::string> parts;
  std::vector<Conclusion> conclusions;
  bool sound = true;

  if (run_fm) {
    const auto sys = build_constraints(t, mode);
    Certificate cert;
    try {
      cert = certify_uniqueness(sys, CertifyOptions{a.max_constraints});
    } catch (const ResourceLimitExceeded& e) {
      throw MathFailure(std::string("certification inconclusive: ") + e.what());
    }
    const bool verified = verify_certificate(sys, cert);
    sound = sound && verified;
    json intervals = json::array();
    for (std::uint32_t k = 0; k < cert.intervals.size(); ++k)
      intervals.push_back({{"unknown", to_string(sys.unknowns.key(UnknownId{k}))},
                           {"lower", optional_rational(cert.intervals[k].lower)},
                           {"upper", optional_rational(cert.intervals[k].upper)}});
    r.doc["fm"] = {{"conclusion", std::string(to_string(cert.conclusion))},
                   {"verified", verified},
                   {"unknowns", sys.unknowns.size()},
                   {"constraints", sys.constraints.size()},
                   {"intervals", intervals}};
    if (!a.emit_path.empty()) {
      write_file(a.emit_path, certificate_to_json(sys, cert).dump(1) + "\n");
      r.doc["certificate_path"] = a.emit_path;
    }
    conclusions.push_back(cert.conclusion);
    parts.push_back(std::string(to_string(cert.conclusion)) + " (fm)");
    if (!verified) parts.back() += " [certificate REJECTED]";
  }
  if (run_replay) {
    // The replay works over per-pair unknowns; per-mu deformations are the
    // special case a[lambda,mu] = a[mu], so a per-pair conclusion of
    // UniqueZero carries over.
    ReplayReport rep;
    try {
      rep = replay_proof(t);
    } catch (const MismatchError& e) {
      throw MathFailure(std::string("replay mismatch: ") + e.what());
    }
    r.doc["replay"] = {{"conclusion", std::string(to_string(rep.conclusion))},
                       {"steps", rep.steps.size()},
                       {"forced_zero", rep.forced_zero.size()},
                       {"unknowns", rep.unknowns.size()}};
    conclusions.push_back(rep.conclusion);
    parts.push_back(std::string(to_string(rep.conclusion)) + " (replay)");
  }

  const bool agree = std::all_of(conclusions.begin(), conclusions.end(), [&](Conclusion c) { return c == conclusions.front(); });
  const bool unique = agree && sound && conclusions.front() == Conclusion::kUniqueZero;
  r.doc["agree"] = agree;
  r.doc["conclusion"] = std::string(to_string(unique ? Conclusion::kUniqueZero : Conclusion::kNotUnique));
  for (std::size_t i = 0; i < parts.size(); ++i) r.text += (i ? " / " : "") + parts[i];
  r.text += "\n";
  r.latex = "\\text{" + r.text.substr(0, r.text.size() - 1) + "}\n";
  r.code = unique ? kExitOk : kExitMathFailure;
  return r;
}

inline Result cmd_check_star(int n, const std::string& spec_path, std::ostream& err) {
  require_rank(n);
  DeformationSpec spec(n, DeformationMode::kPerPair);
  try {
    spec = spec_from_json(json::parse(read_file(spec_path)));
  } catch (const json::parse_error& e) {
    throw UsageError(spec_path + ": " + e.what());
  } catch (const FormatError& e) {
    throw UsageError(spec_path + ": " + e.what());
  } catch (const MalformedDeformation& e) {
    throw UsageError(spec_path + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError(spec_path + ": " + e.what());
  }
  if (spec.rank() != n) throw UsageError("spec is for n=" + std::to_string(spec.rank()) + " but --n is " + std::to_string(n));
  const auto t = obtain_table(n, err);
  const auto rep = check_condition_star(t, spec);
  Result r;
  json violations = json::array();
  std::ostringstream s;
  s << (rep.passes ? "passes" : "fails") << "\n";
  for (const auto& v : rep.violations) {
    violations.push_back({{"mu", to_json(v.mu)}, {"nu", to_json(v.nu)}, {"d", v.d}, {"value", to_string(v.value)}});
    s << "  sigma[1,1]*sigma" << to_string(v.mu).substr(3) << ": coefficient of q^" << v.d << " sigma" << to_string(v.nu).substr(3)
      << " is " << to_string(v.value) << "\n";
  }
  r.text = s.str();
  r.latex = "\\begin{verbatim}\n" + r.text + "\\end{verbatim}\n";
  r.doc = {{"command", "check-star"}, {"n", n}, {"mode", std::string(to_string(spec.mode()))}, {"passes", rep.passes}, {"violations", violations}};
  r.code = rep.passes ? kExitOk : kExitMathFailure;
  return r;
}

struct TableArgs {
  std::optional<int> n;
  std::string out_path;
  std::string load_path;
  bool revalidate = false;
};

inline Result cmd_table(const TableArgs& a) {
  Result r;
  if (!a.load_path.empty()) {
    const std::string bytes = read_file(a.load_path);
    json doc;
    try {
      doc = json::parse(bytes);
    } catch (const json::parse_error& e) {
      throw UsageError(a.load_path + ": " + e.what());
    }
    MultiplicationTable t = [&] {
      try {
        return table_from_json(doc, a.revalidate);
      } catch (const FormatError& e) {
        throw UsageError(a.load_path + ": " + e.what());
      } catch (const TableInvariantError& e) {
        throw MathFailure(a.load_path + ": " + e.what());
      }
    }();
    if (a.n && *a.n != t.rank())
      throw UsageError("table is for n=" + std::to_string(t.rank()) + " but --n is " + std::to_string(*a.n));
    const bool identical = serialize_table(t) == bytes;
    r.doc = {{"command", "table"}, {"n", t.rank()},       {"action", "load"},          {"path", a.load_path},
             {"basis_size", t.basis().size()}, {"products", t.stored_products()}, {"revalidated", a.revalidate},
             {"bit_identical", identical}};
    r.text = "loaded " + a.load_path + " (n=" + std::to_string(t.rank()) + ", " + std::to_string(t.basis().size()) + " classes" +
             (a.revalidate ? ", revalidated" : "") + (identical ? ", bit-identical" : ", re-serialization differs") + ")\n";
  } else {
    if (!a.n) throw UsageError("table needs --n when building");
    require_rank(*a.n);
    std::filesystem::path path = a.out_path;
    if (path.empty()) {
      const auto def = default_cache_path(*a.n);
      if (!def) throw UsageError("table needs --out, --load, or OSG_CACHE_DIR");
      path = *def;
    }
    const auto t = build_table(*a.n);
    write_file(path, serialize_table(t));
    r.doc = {{"command", "table"}, {"n", *a.n}, {"action", "build"}, {"path", path.string()}, {"basis_size", t.basis().size()},
             {"products", t.stored_products()}};
    r.text = "wrote " + path.string() + " (n=" + std::to_string(*a.n) + ", " + std::to_string(t.basis().size()) + " classes)\n";
  }
  r.latex = "\\texttt{" + r.text.substr(0, r.text.size() - 1) + "}\n";
  return r;
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum cohomology of the odd symplectic Grassmannian of lines"};
  app.name("osg");
  app.require_subcommand(1);

  std::string format = "text";
  int n = 0;
  auto common = [&](CLI::App* sub, bool n_required = true) {
    auto* opt = sub->add_option("--n", n, "rank n of IG(2, 2n+1)");
    if (n_required) opt->required();
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json", "latex"}));
  };

  std::optional<int> degree;
  auto* basis = app.add_subcommand("basis", "list the Schubert basis");
  common(basis);
  basis->add_option("--degree", degree, "only classes of this degree");

  std::string expr;
  auto* mult = app.add_subcommand("mult", "evaluate a class expression in the quantum ring");
  common(mult);
  mult->add_option("expression", expr, "e.g. \"tau[1,1]*tau[5,2] + q*tau[3,0]\"")->required();

  std::string pieri_class, with;
  auto* pieri_cmd = app.add_subcommand("pieri", "quantum Pieri expansion");
  common(pieri_cmd);
  pieri_cmd->add_option("--class", pieri_class, "1 or 11")->required()->check(CLI::IsMember({"1", "11"}));
  pieri_cmd->add_option("--with", with, "index A,B")->required();

  std::string lam_s, mu_s, nu_s;
  int d = 0;
  auto* gw = app.add_subcommand("gw", "one structure constant: coefficient of q^d tau_nu in tau_lambda * tau_mu");
  common(gw);
  gw->add_option("--lambda", lam_s)->required();
  gw->add_option("--mu", mu_s)->required();
  gw->add_option("--nu", nu_s)->required();
  gw->add_option("--d", d)->required();

  std::string suite;
  AssocOptions assoc;
  auto* verify = app.add_subcommand("verify", "run an invariant suite");
  common(verify);
  verify->add_option("--suite", suite)->required()->check(CLI::IsMember({"lemma23", "assoc", "pairing", "betti", "negativity"}));
  verify->add_option("--samples", assoc.samples, "random triples when the exhaustive check is too large");
  verify->add_option("--seed", assoc.seed);

  CertifyArgs cert;
  auto* certify = app.add_subcommand("certify", "decide whether the zero deformation is the only one satisfying positivity");
  common(certify);
  certify->add_option("--mode", cert.mode)->check(CLI::IsMember({"per-pair", "per-mu"}));
  certify->add_option("--method", cert.method)->check(CLI::IsMember({"fm", "replay", "both"}));
  certify->add_option("--emit-certificate", cert.emit_path, "write the Farkas certificate JSON here");
  certify->add_option("--max-constraints", cert.max_constraints, "resource cap for elimination");

  std::string spec_path;
  auto* star = app.add_subcommand("check-star", "check positivity of sigma[1,1] products for a given deformation");
  common(star);
  star->add_option("--spec", spec_path)->required();

  TableArgs table_args;
  auto* table = app.add_subcommand("table", "build or load a cached multiplication table");
  common(table, false);
  auto* out_opt = table->add_option("--out", table_args.out_path);
  auto* load_opt = table->add_option("--load", table_args.load_path);
  out_opt->excludes(load_opt);
  table->add_flag("--revalidate", table_args.revalidate, "fully re-check a loaded table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream help_out, help_err;
    const int code = app.exit(e, help_out, help_err);
    out << help_out.str();
    err << help_err.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  Result r;
  try {
    if (*basis) r = cmd_basis(n, degree);
    else if (*mult) r = cmd_mult(n, expr, err);
    else if (*pieri_cmd) r = cmd_pieri(n, pieri_class, parse_index_arg(with, "--with"));
    else if (*gw)
      r = cmd_gw(n, parse_index_arg(lam_s, "--lambda"), parse_index_arg(mu_s, "--mu"), parse_index_arg(nu_s, "--nu"), d, err);
    else if (*verify) r = cmd_verify(n, suite, assoc, err);
    else if (*certify) {
      cert.n = n;
      r = cmd_certify(cert, err);
    } else if (*star) r = cmd_check_star(n, spec_path, err);
    else {
      if (table->count("--n")) table_args.n = n;
      r = cmd_table(table_args);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MathFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitMathFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitMathFailure;
  }

  if (format == "json") out << r.doc.dump(2) << "\n";
  else if (format == "latex") out << r.latex;
  else out << r.text;
  return r.code;
}

}  // namespace osg::cli
