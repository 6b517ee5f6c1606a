#pragma once
// JSON documents for Vinberg runs and chirality verdicts.

#include <fstream>

#include "chirality.hpp"

namespace chiralat {

namespace detail {

inline ordered_json int_json(const Integer& x) {
  if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
    return static_cast<long long>(x);
  return x.str();
}

inline Integer json_int(const nlohmann::json& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    try {
      return Integer(j.get<std::string>());
    } catch (const std::exception&) {
    }
  }
  throw invalid_input("expected an integer in JSON document");
}

inline ordered_json vec_json(const IntVector& v) {
  ordered_json a = ordered_json::array();
  for (const auto& x : v) a.push_back(int_json(x));
  return a;
}

inline IntVector json_vec(const nlohmann::json& j) {
  if (!j.is_array()) throw invalid_input("expected an integer array in JSON document");
  IntVector v;
  for (const auto& x : j) v.push_back(json_int(x));
  return v;
}

inline ordered_json matrix_json(const IntMatrix& m) {
  ordered_json a = ordered_json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) a.push_back(vec_json(m.row(r)));
  return a;
}

}  // namespace detail

inline ordered_json to_json(const VinbergRun& run) {
  ordered_json j;
  j["lattice"] = to_json(run.lattice.spec);
  j["base_point"] = detail::vec_json(run.base_point);
  ordered_json roots = ordered_json::array();
  for (std::size_t i = 0; i < run.accepted.size(); ++i) {
    const auto& a = run.accepted[i];
    ordered_json r;
    r["label"] = i < run.labels.size() ? run.labels[i] : "";
    r["coords"] = detail::vec_json(a.root.vec);
    r["norm"] = detail::int_json(a.root.norm);
    r["level_num"] = detail::int_json(numerator(a.level));
    r["level_den"] = detail::int_json(denominator(a.level));
    roots.push_back(std::move(r));
  }
  j["roots"] = std::move(roots);
  ordered_json t;
  t["status"] = std::string(status_name(run.termination.status));
  t["criterion"] = run.termination.criterion;
  t["max_level"] = to_string(run.termination.max_level);
  j["termination"] = std::move(t);
  return j;
}

/// Reads a run document, re-deriving norms and levels and rejecting any
/// entry that disagrees with them.
inline VinbergRun run_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("lattice") || !j.contains("base_point") || !j.contains("roots"))
    throw invalid_input("run document needs lattice, base_point and roots");
  VinbergRun run;
  run.lattice = build_lattice(spec_from_json(j["lattice"]));
  run.base_point = detail::json_vec(j["base_point"]);
  if (run.base_point.size() != run.lattice.rank()) throw invalid_input("base point has wrong length");
  if (!j["roots"].is_array()) throw invalid_input("roots must be an array");
  for (const auto& r : j["roots"]) {
    if (!r.is_object() || !r.contains("coords")) throw invalid_input("root entry needs coords");
    IntVector v = detail::json_vec(r["coords"]);
    if (v.size() != run.lattice.rank()) throw invalid_input("root has wrong length");
    auto k = root_norm_of(run.lattice, v);
    if (!k) throw invalid_input("entry is not a 2-root or 6-root: " + to_string(v));
    if (r.contains("norm") && detail::json_int(r["norm"]) != *k) throw invalid_input("root norm mismatch");
    Root root{v, *k};
    Rational level = root_level(run.lattice, run.base_point, root);
    if (r.contains("level_num") && r.contains("level_den") &&
        Rational(detail::json_int(r["level_num"]), detail::json_int(r["level_den"])) != level)
      throw invalid_input("root level mismatch");
    run.accepted.push_back({root, level});
    run.labels.push_back(r.contains("label") && r["label"].is_string() ? r["label"].get<std::string>()
                                                                       : "v" + std::to_string(run.labels.size() + 1));
  }
  if (j.contains("termination")) {
    const auto& t = j["termination"];
    const std::string s = t.value("status", "Running");
    run.termination.status = s == "Terminated"   ? RunStatus::Terminated
                             : s == "Exhausted" ? RunStatus::Exhausted
                                                : RunStatus::Running;
    run.termination.criterion = t.value("criterion", "none");
    if (t.contains("max_level")) {
      try {
        run.termination.max_level = Rational(t["max_level"].get<std::string>());
      } catch (const std::exception&) {
        throw invalid_input("bad max_level in run document");
      }
    }
  }
  return run;
}

inline ordered_json to_json(const Witness& w) {
  ordered_json j;
  j["route"] = w.route;
  ordered_json perm = ordered_json::array();
  for (std::size_t i = 0; i < w.symmetry.vertices.size(); ++i)
    perm.push_back({w.symmetry.vertices[i], w.symmetry.image[i]});
  j["permutation"] = std::move(perm);
  j["matrix"] = detail::matrix_json(w.matrix);
  j["black_vertex"] = detail::vec_json(w.black_vertex);
  j["image_vertex"] = detail::vec_json(w.image_vertex);
  j["black_label"] = w.black_label;
  j["image_label"] = w.image_label;
  return j;
}

inline ordered_json to_json(const ChiralityVerdict& v, const Lattice& L) {
  ordered_json j;
  j["lattice"] = to_json(L.spec);
  j["verdict"] = std::string(verdict_name(v.verdict));
  j["reason"] = v.reason;
  j["witness"] = v.witness ? to_json(*v.witness) : ordered_json(nullptr);
  j["vinberg_run"] = v.run ? to_json(*v.run) : ordered_json(nullptr);
  j["diagnostics"] = v.diagnostics;
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw invalid_input("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw invalid_input("cannot write " + path);
  out << text;
  if (!out) throw invalid_input("write failed for " + path);
}

/// A lattice from an expression ("U+A2+2E8"), a JSON spec, or a path to a
/// JSON spec file.
inline Lattice load_lattice(const std::string& arg) {
  std::string t = arg;
  t.erase(0, t.find_first_not_of(" \t\n"));
  if (!t.empty() && t[0] == '[') return build_lattice(parse_lattice_spec(t));
  if (std::ifstream(arg).good()) return build_lattice(parse_lattice_spec(read_file(arg)));
  if (t.size() > 5 && t.substr(t.size() - 5) == ".json") throw invalid_input("cannot read " + arg);
  return build_lattice(parse_lattice_expression(t));
}

}  // namespace chiralat
