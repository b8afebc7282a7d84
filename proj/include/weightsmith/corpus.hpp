#ifndef WEIGHTSMITH_CORPUS_HPP
#define WEIGHTSMITH_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "group.hpp"

namespace weightsmith {

// ---- standard constructions ----

inline PermGroup cyclic_group(int n) {
  std::vector<int> im(n);
  for (int i = 0; i < n; ++i) im[i] = (i + 1) % n;
  return PermGroup(n, {Perm(std::move(im))});
}

inline PermGroup symmetric_group(int n) {
  std::vector<int> cyc(n), swap01(n);
  for (int i = 0; i < n; ++i) {
    cyc[i] = (i + 1) % n;
    swap01[i] = i;
  }
  std::swap(swap01[0], swap01[1]);
  return PermGroup(n, {Perm(std::move(cyc)), Perm(std::move(swap01))});
}

inline PermGroup alternating_group(int n) {
  std::vector<Perm> gens;
  gens.push_back(Perm::from_cycles("(1 2 3)", n));
  if (n >= 4) {
    std::vector<int> im(n);
    for (int i = 0; i < n; ++i) im[i] = i;
    if (n % 2 == 1) {
      for (int i = 0; i < n; ++i) im[i] = (i + 1) % n;  // n-cycle, even for odd n
    } else {
      for (int i = 1; i < n; ++i) im[i] = i % (n - 1) + 1;  // (2 3 ... n)
      im[0] = 0;
    }
    gens.emplace_back(std::move(im));
  }
  return PermGroup(n, gens);
}

inline PermGroup dihedral_8() {
  return PermGroup(4, {Perm::from_cycles("(1 2 3 4)", 4), Perm::from_cycles("(1 3)", 4)});
}

/// 2x2 matrices over F_q acting on the q^2 - 1 nonzero column vectors,
/// ordered lexicographically by (x, y).
inline Perm matrix_perm(int q, int a, int b, int c, int d) {
  auto idx = [q](int x, int y) {
    int raw = x * q + y;
    return raw - 1;  // skip (0,0)
  };
  std::vector<int> im(q * q - 1);
  for (int x = 0; x < q; ++x)
    for (int y = 0; y < q; ++y) {
      if (x == 0 && y == 0) continue;
      int nx = ((a * x + b * y) % q + q) % q;
      int ny = ((c * x + d * y) % q + q) % q;
      im[idx(x, y)] = idx(nx, ny);
    }
  return Perm(std::move(im));
}

inline PermGroup sl2(int q) {
  return PermGroup(q * q - 1, {matrix_perm(q, 0, q - 1, 1, 0), matrix_perm(q, 1, 1, 0, 1)});
}

inline PermGroup gl2_3() {
  return PermGroup(8, {matrix_perm(3, 0, 2, 1, 0), matrix_perm(3, 1, 1, 0, 1),
                       matrix_perm(3, 1, 0, 0, 2)});
}

/// Quaternion group of order 8 inside SL2(3), on the 8 nonzero vectors.
inline PermGroup quaternion_8() {
  return PermGroup(8, {matrix_perm(3, 0, 2, 1, 0), matrix_perm(3, 1, 1, 1, 2)});
}

// ---- corpus specs ----

struct GroupSpec {
  std::string name;
  PermGroup group;
  std::optional<PermGroup> normal;           // for pair entries: G normal in group
  std::optional<AbstractGroup> e_table;      // optional acting group E
  std::vector<int> e_gen_indices;            // E generators
  std::vector<std::vector<Perm>> e_gen_autos;  // their automorphisms of `group`
};

inline std::vector<Perm> parse_perm_list(const nlohmann::json& arr, int degree,
                                         const std::string& field) {
  if (!arr.is_array()) throw parse_error(field + ": expected an array of cycle strings");
  std::vector<Perm> out;
  for (size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string())
      throw parse_error(field + "[" + std::to_string(i) + "]: expected a string");
    try {
      out.push_back(Perm::from_cycles(arr[i].get<std::string>(), degree));
    } catch (const parse_error& e) {
      throw parse_error(field + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

inline GroupSpec parse_group_spec(const nlohmann::json& j) {
  if (!j.is_object()) throw parse_error("group spec: expected a JSON object");
  if (!j.contains("degree") || !j.at("degree").is_number_integer())
    throw parse_error("degree: required integer field");
  int degree = j.at("degree").get<int>();
  if (degree < 1) throw parse_error("degree: must be positive");
  if (!j.contains("generators")) throw parse_error("generators: required field");
  std::string name = j.value("name", std::string("unnamed"));
  PermGroup g(degree, parse_perm_list(j.at("generators"), degree, "generators"));

  std::optional<PermGroup> normal;
  if (j.contains("normal_generators")) {
    PermGroup n(degree, parse_perm_list(j.at("normal_generators"), degree, "normal_generators"));
    if (!is_normal(g, n)) throw parse_error("normal_generators: subgroup is not normal");
    normal = std::move(n);
  }

  GroupSpec spec{std::move(name), std::move(g), std::move(normal), std::nullopt, {}, {}};
  if (j.contains("e")) {
    const auto& ej = j.at("e");
    if (!ej.contains("table")) throw parse_error("e.table: required field");
    AbstractGroup e{ej.at("table").get<std::vector<std::vector<int>>>()};
    e.validate();
    std::vector<int> gidx = ej.value("generators", std::vector<int>{});
    std::vector<std::vector<Perm>> autos;
    if (ej.contains("images")) {
      for (const auto& row : ej.at("images"))
        autos.push_back(parse_perm_list(row, degree, "e.images"));
    }
    if (gidx.size() != autos.size())
      throw parse_error("e: generators and images must have the same length");
    // validates automorphisms and closure
    AutAction check(e, spec.group, gidx, autos);
    spec.e_table = std::move(e);
    spec.e_gen_indices = std::move(gidx);
    spec.e_gen_autos = std::move(autos);
  }
  return spec;
}

inline std::vector<GroupSpec> parse_corpus(const nlohmann::json& j) {
  if (!j.is_array()) throw parse_error("corpus: expected a JSON array");
  std::vector<GroupSpec> out;
  std::vector<std::string> names;
  for (const auto& entry : j) {
    GroupSpec s = parse_group_spec(entry);
    for (const std::string& n : names)
      if (n == s.name) throw parse_error("corpus: duplicate name " + s.name);
    names.push_back(s.name);
    out.push_back(std::move(s));
  }
  return out;
}

/// The bundled corpus as a JSON array (written to data/corpus.json).
inline nlohmann::json builtin_corpus_json() {
  auto entry = [](const std::string& name, const PermGroup& g,
                  const PermGroup* normal = nullptr) {
    nlohmann::json j;
    j["name"] = name;
    j["degree"] = g.degree();
    std::vector<std::string> gens;
    for (const Perm& x : g.generators()) gens.push_back(x.to_cycles());
    j["generators"] = gens;
    if (normal) {
      std::vector<std::string> ngens;
      for (const Perm& x : normal->generators()) ngens.push_back(x.to_cycles());
      j["normal_generators"] = ngens;
    }
    return j;
  };
  nlohmann::json out = nlohmann::json::array();
  out.push_back(entry("C6", cyclic_group(6)));
  {
    PermGroup s3 = symmetric_group(3), a3 = alternating_group(3);
    out.push_back(entry("S3", s3, &a3));
  }
  out.push_back(entry("D8", dihedral_8()));
  out.push_back(entry("Q8", quaternion_8()));
  out.push_back(entry("A4", alternating_group(4)));
  {
    PermGroup s4 = symmetric_group(4), a4 = alternating_group(4);
    out.push_back(entry("S4", s4, &a4));
  }
  out.push_back(entry("SL2_3", sl2(3)));
  out.push_back(entry("A5", alternating_group(5)));
  {
    PermGroup s5 = symmetric_group(5), a5 = alternating_group(5);
    out.push_back(entry("S5", s5, &a5));
  }
  {
    PermGroup gl = gl2_3(), sl = sl2(3);
    out.push_back(entry("GL2_3", gl, &sl));
  }
  out.push_back(entry("SL2_5", sl2(5)));
  return out;
}

}  // namespace weightsmith

#endif
