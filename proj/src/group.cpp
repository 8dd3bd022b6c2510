#include "lab/group.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace lab {
namespace {

using Elem = std::vector<int>;

// Abstract element arithmetic in the kind's natural coordinates; build_group
// only ever touches the group through this interface.
struct AbstractGroup {
  Elem identity;
  std::function<Elem(const Elem&, const Elem&)> mul;
  std::function<Elem(const Elem&)> inv;
  std::function<std::string(const Elem&)> label;
  long long expected_order = 0;
};

int imod(int a, int n) { return ((a % n) + n) % n; }

AbstractGroup make_cyclic(int n) {
  AbstractGroup g;
  g.identity = {0};
  g.mul = [n](const Elem& a, const Elem& b) { return Elem{imod(a[0] + b[0], n)}; };
  g.inv = [n](const Elem& a) { return Elem{imod(-a[0], n)}; };
  g.label = [](const Elem& a) { return std::to_string(a[0]); };
  g.expected_order = n;
  return g;
}

AbstractGroup make_product(std::vector<int> moduli) {
  AbstractGroup g;
  g.identity = Elem(moduli.size(), 0);
  g.mul = [moduli](const Elem& a, const Elem& b) {
    Elem c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = imod(a[i] + b[i], moduli[i]);
    return c;
  };
  g.inv = [moduli](const Elem& a) {
    Elem c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = imod(-a[i], moduli[i]);
    return c;
  };
  g.label = [](const Elem& a) {
    std::string s = "(";
    for (size_t i = 0; i < a.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(a[i]);
    }
    return s + ")";
  };
  g.expected_order = 1;
  for (int m : moduli) g.expected_order *= m;
  return g;
}

// Elements r^a s^b with s r s = r^-1.
AbstractGroup make_dihedral(int n) {
  AbstractGroup g;
  g.identity = {0, 0};
  g.mul = [n](const Elem& a, const Elem& b) {
    int rot = imod(a[0] + (a[1] ? -b[0] : b[0]), n);
    return Elem{rot, a[1] ^ b[1]};
  };
  g.inv = [n](const Elem& a) {
    return a[1] ? a : Elem{imod(-a[0], n), 0};
  };
  g.label = [](const Elem& a) {
    std::string s = "r^" + std::to_string(a[0]);
    if (a[1]) s += " s";
    return s;
  };
  g.expected_order = 2LL * n;
  return g;
}

// One-line permutations on {0,...,n-1}; (a*b)(i) = a(b(i)).
AbstractGroup make_symmetric(int n) {
  AbstractGroup g;
  g.identity.resize(n);
  std::iota(g.identity.begin(), g.identity.end(), 0);
  g.mul = [](const Elem& a, const Elem& b) {
    Elem c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
    return c;
  };
  g.inv = [](const Elem& a) {
    Elem c(a.size());
    for (size_t i = 0; i < a.size(); ++i) c[a[i]] = static_cast<int>(i);
    return c;
  };
  g.label = [](const Elem& a) {
    std::string s = "[";
    for (size_t i = 0; i < a.size(); ++i) {
      if (i) s += " ";
      s += std::to_string(a[i] + 1);
    }
    return s + "]";
  };
  g.expected_order = 1;
  for (int i = 2; i <= n; ++i) g.expected_order *= i;
  return g;
}

// Upper unitriangular 3x3 matrices over Z_p, coordinates (a, b, c):
// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a*b').
AbstractGroup make_heisenberg(int p) {
  AbstractGroup g;
  g.identity = {0, 0, 0};
  g.mul = [p](const Elem& a, const Elem& b) {
    return Elem{imod(a[0] + b[0], p), imod(a[1] + b[1], p),
                imod(a[2] + b[2] + a[0] * b[1], p)};
  };
  g.inv = [p](const Elem& a) {
    return Elem{imod(-a[0], p), imod(-a[1], p), imod(a[0] * a[1] - a[2], p)};
  };
  g.label = [](const Elem& a) {
    return "(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," +
           std::to_string(a[2]) + ")";
  };
  g.expected_order = static_cast<long long>(p) * p * p;
  return g;
}

AbstractGroup make_from_table(const std::vector<std::vector<std::string>>& rows,
                              std::vector<std::string>* labels_out) {
  if (rows.size() < 2) throw GroupBuildError("explicit table needs a header row and body");
  const std::vector<std::string>& labels = rows[0];
  const int n = static_cast<int>(labels.size());
  if (static_cast<int>(rows.size()) != n + 1)
    throw GroupBuildError("explicit table body must have one row per element");
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) {
    if (!index.emplace(labels[i], i).second)
      throw GroupBuildError("duplicate label in table header: " + labels[i]);
  }
  std::vector<int> table(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i + 1].size()) != n)
      throw GroupBuildError("explicit table row has wrong width");
    for (int j = 0; j < n; ++j) {
      auto it = index.find(rows[i + 1][j]);
      if (it == index.end())
        throw GroupBuildError("unknown label in table body: " + rows[i + 1][j]);
      table[static_cast<size_t>(i) * n + j] = it->second;
    }
  }
  // Locate the two-sided identity.
  int id = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = table[static_cast<size_t>(e) * n + x] == x &&
           table[static_cast<size_t>(x) * n + e] == x;
    if (ok) {
      id = e;
      break;
    }
  }
  if (id < 0) throw GroupBuildError("explicit table has no identity element");

  AbstractGroup g;
  g.identity = {id};
  g.mul = [table, n](const Elem& a, const Elem& b) {
    return Elem{table[static_cast<size_t>(a[0]) * n + b[0]]};
  };
  g.inv = [table, n, id](const Elem& a) {
    for (int x = 0; x < n; ++x)
      if (table[static_cast<size_t>(a[0]) * n + x] == id) return Elem{x};
    throw GroupBuildError("table element has no inverse");
  };
  g.label = [labels](const Elem& a) { return labels[a[0]]; };
  g.expected_order = n;
  if (labels_out) *labels_out = labels;
  return g;
}

std::vector<Elem> abstract_generators(const GroupSpec& spec, const AbstractGroup& g) {
  std::vector<Elem> gens;
  if (spec.kind == GroupKind::explicit_table) {
    std::map<std::string, int> index;
    for (int i = 0; i < static_cast<int>(spec.table[0].size()); ++i)
      index[spec.table[0][i]] = i;
    for (const auto& lbl : spec.generator_labels) {
      auto it = index.find(lbl);
      if (it == index.end()) throw GroupBuildError("unknown generator label: " + lbl);
      gens.push_back({it->second});
    }
    return gens;
  }
  for (const auto& coords : spec.generators) {
    Elem e = coords;
    if (spec.kind == GroupKind::cyclic) e = {imod(coords.at(0), spec.n)};
    if (spec.kind == GroupKind::symmetric_group) {
      // One-line notation with 1-based images.
      if (static_cast<int>(e.size()) != spec.n)
        throw GroupBuildError("permutation generator has wrong length");
      for (auto& v : e) v -= 1;
    }
    if (e.size() != g.identity.size())
      throw GroupBuildError("generator has wrong arity for this kind");
    gens.push_back(e);
  }
  return gens;
}

}  // namespace

BuiltGroup build_group(const GroupSpec& spec, int order_cap) {
  AbstractGroup abs;
  std::vector<std::string> table_labels;
  switch (spec.kind) {
    case GroupKind::cyclic:
      if (spec.n < 1) throw GroupBuildError("cyclic order must be positive");
      abs = make_cyclic(spec.n);
      break;
    case GroupKind::product_of_cyclics:
      if (spec.moduli.empty()) throw GroupBuildError("product needs at least one modulus");
      for (int m : spec.moduli)
        if (m < 1) throw GroupBuildError("moduli must be positive");
      abs = make_product(spec.moduli);
      break;
    case GroupKind::dihedral:
      if (spec.n < 1) throw GroupBuildError("dihedral parameter must be positive");
      abs = make_dihedral(spec.n);
      break;
    case GroupKind::symmetric_group:
      if (spec.n < 1 || spec.n > 8) throw GroupBuildError("symmetric_group n out of range");
      abs = make_symmetric(spec.n);
      break;
    case GroupKind::heisenberg_mod_p: {
      if (spec.p < 2) throw GroupBuildError("heisenberg p must be >= 2");
      for (int q = 2; q * q <= spec.p; ++q)
        if (spec.p % q == 0) throw GroupBuildError("heisenberg p must be prime");
      abs = make_heisenberg(spec.p);
      break;
    }
    case GroupKind::explicit_table:
      abs = make_from_table(spec.table, &table_labels);
      break;
  }
  if (abs.expected_order > order_cap)
    throw GroupBuildError("group order " + std::to_string(abs.expected_order) +
                          " exceeds cap " + std::to_string(order_cap));

  std::vector<Elem> gens = abstract_generators(spec, abs);
  if (gens.empty()) throw GroupBuildError("no generators given");
  for (const auto& s : gens)
    if (s == abs.identity) throw GroupBuildError("identity listed as a generator");
  // Symmetric closure: append missing inverses, never duplicating involutions.
  const size_t given = gens.size();
  for (size_t i = 0; i < given; ++i) {
    Elem w = abs.inv(gens[i]);
    if (std::find(gens.begin(), gens.end(), w) == gens.end()) gens.push_back(w);
  }

  // BFS enumeration from the identity: breadth level, then generator index.
  std::map<Elem, int> index;
  std::vector<Elem> elems;
  index[abs.identity] = 0;
  elems.push_back(abs.identity);
  for (size_t head = 0; head < elems.size(); ++head) {
    Elem cur = elems[head];
    for (const auto& s : gens) {
      Elem nxt = abs.mul(cur, s);
      if (index.emplace(nxt, static_cast<int>(elems.size())).second) {
        elems.push_back(nxt);
        if (static_cast<int>(elems.size()) > order_cap)
          throw GroupBuildError("BFS exceeded order cap");
      }
    }
  }
  const int n = static_cast<int>(elems.size());
  if (n != abs.expected_order)
    throw GroupBuildError("generators do not generate the group: reached " +
                          std::to_string(n) + " of " +
                          std::to_string(abs.expected_order));

  BuiltGroup out;
  out.group.order = n;
  out.group.mul_table.resize(static_cast<size_t>(n) * n);
  out.group.inv_table.resize(n);
  out.group.element_labels.resize(n);
#pragma omp parallel for schedule(static)
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      out.group.mul_table[static_cast<size_t>(a) * n + b] =
          static_cast<uint16_t>(index.at(abs.mul(elems[a], elems[b])));
    out.group.inv_table[a] = index.at(abs.inv(elems[a]));
    out.group.element_labels[a] = abs.label(elems[a]);
  }
  for (const auto& s : gens) out.gens.elements.push_back(index.at(s));
  return out;
}

std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& seeds) {
  std::set<int> h = {FiniteGroup::identity};
  std::vector<int> queue = {FiniteGroup::identity};
  std::vector<int> step = seeds;
  for (int s : seeds) step.push_back(g.inv(s));
  for (size_t head = 0; head < queue.size(); ++head) {
    int cur = queue[head];
    for (int s : step) {
      int nxt = g.mul(cur, s);
      if (h.insert(nxt).second) queue.push_back(nxt);
    }
  }
  std::vector<int> out(h.begin(), h.end());
  if (g.order % static_cast<int>(out.size()) != 0)
    throw std::logic_error("subgroup size does not divide group order");
  return out;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h) {
  std::set<int> members(h.begin(), h.end());
  if (!members.count(FiniteGroup::identity)) return false;
  for (int a : h)
    for (int b : h)
      if (!members.count(g.mul(a, b))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<int>& h) {
  if (!is_subgroup(g, h)) throw std::invalid_argument("is_normal: input is not a subgroup");
  std::set<int> members(h.begin(), h.end());
  for (int x = 0; x < g.order; ++x)
    for (int a : h)
      if (!members.count(g.mul(g.mul(x, a), g.inv(x)))) return false;
  return true;
}

bool is_abelian(const FiniteGroup& g) {
  for (int a = 0; a < g.order; ++a)
    for (int b = a + 1; b < g.order; ++b)
      if (g.mul(a, b) != g.mul(b, a)) return false;
  return true;
}

Quotient quotient_group(const FiniteGroup& g, const std::vector<int>& normal_subgroup) {
  if (!is_normal(g, normal_subgroup))
    throw std::invalid_argument("quotient_group: subgroup is not normal");
  Quotient q;
  q.projection.assign(g.order, -1);
  for (int x = 0; x < g.order; ++x) {
    if (q.projection[x] >= 0) continue;
    const int idx = static_cast<int>(q.cosets.size());
    std::vector<int> coset;
    for (int h : normal_subgroup) {
      int m = g.mul(h, x);
      q.projection[m] = idx;
      coset.push_back(m);
    }
    std::sort(coset.begin(), coset.end());
    q.cosets.push_back(std::move(coset));
  }
  const int m = static_cast<int>(q.cosets.size());
  q.group.order = m;
  q.group.mul_table.resize(static_cast<size_t>(m) * m);
  q.group.inv_table.resize(m);
  q.group.element_labels.resize(m);
  for (int i = 0; i < m; ++i) {
    const int ri = q.cosets[i][0];
    for (int j = 0; j < m; ++j)
      q.group.mul_table[static_cast<size_t>(i) * m + j] =
          static_cast<uint16_t>(q.projection[g.mul(ri, q.cosets[j][0])]);
    q.group.inv_table[i] = q.projection[g.inv(ri)];
    q.group.element_labels[i] =
        g.element_labels.empty() ? std::to_string(ri) : g.element_labels[ri];
  }
  if (g.order <= 512) {
    for (int a = 0; a < g.order; ++a)
      for (int b = 0; b < g.order; ++b)
        if (q.projection[g.mul(a, b)] !=
            q.group.mul(q.projection[a], q.projection[b]))
          throw std::logic_error("quotient projection is not a homomorphism");
  }
  return q;
}

int element_order(const FiniteGroup& g, int a) {
  int x = a, k = 1;
  while (x != FiniteGroup::identity) {
    x = g.mul(x, a);
    ++k;
  }
  return k;
}

std::vector<int> abelian_invariant_factors(const FiniteGroup& a) {
  if (!is_abelian(a)) throw std::invalid_argument("invariant factors need an abelian group");
  std::vector<int> factors_desc;
  FiniteGroup cur = a;
  while (cur.order > 1) {
    int best = 1, best_order = 1;
    for (int x = 1; x < cur.order; ++x) {
      int o = element_order(cur, x);
      if (o > best_order) {
        best_order = o;
        best = x;
      }
    }
    factors_desc.push_back(best_order);
    cur = quotient_group(cur, subgroup_generated(cur, {best})).group;
  }
  std::vector<int> factors(factors_desc.rbegin(), factors_desc.rend());
  long long prod = 1;
  for (size_t i = 0; i < factors.size(); ++i) {
    prod *= factors[i];
    if (i + 1 < factors.size() && factors[i + 1] % factors[i] != 0)
      throw std::logic_error("invariant factor chain not divisible");
  }
  if (prod != a.order) throw std::logic_error("invariant factors do not multiply to |A|");
  return factors;
}

GroupSpec parse_group_spec(const nlohmann::json& doc) {
  GroupSpec spec;
  const std::string kind = doc.at("kind").get<std::string>();
  spec.name = doc.value("name", kind);
  const nlohmann::json params = doc.value("params", nlohmann::json::object());
  if (kind == "cyclic") {
    spec.kind = GroupKind::cyclic;
    spec.n = params.at("n").get<int>();
  } else if (kind == "product_of_cyclics") {
    spec.kind = GroupKind::product_of_cyclics;
    spec.moduli = params.at("moduli").get<std::vector<int>>();
  } else if (kind == "dihedral") {
    spec.kind = GroupKind::dihedral;
    spec.n = params.at("n").get<int>();
  } else if (kind == "symmetric_group") {
    spec.kind = GroupKind::symmetric_group;
    spec.n = params.at("n").get<int>();
  } else if (kind == "heisenberg_mod_p") {
    spec.kind = GroupKind::heisenberg_mod_p;
    spec.p = params.at("p").get<int>();
  } else if (kind == "explicit_table") {
    spec.kind = GroupKind::explicit_table;
    if (params.contains("table"))
      spec.table = params.at("table").get<std::vector<std::vector<std::string>>>();
    else {
      GroupSpec csv = parse_multiplication_csv(params.at("csv").get<std::string>(), {});
      spec.table = csv.table;
    }
    spec.generator_labels = doc.at("generators").get<std::vector<std::string>>();
    return spec;
  } else {
    throw GroupBuildError("unknown group kind: " + kind);
  }
  if (spec.kind == GroupKind::cyclic) {
    for (const auto& g : doc.at("generators"))
      spec.generators.push_back({g.get<int>()});
  } else {
    spec.generators = doc.at("generators").get<std::vector<std::vector<int>>>();
  }
  return spec;
}

GroupSpec parse_group_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GroupBuildError("cannot open spec file: " + path);
  nlohmann::json doc;
  in >> doc;
  return parse_group_spec(doc);
}

GroupSpec parse_multiplication_csv(const std::string& path,
                                   const std::vector<std::string>& generator_labels) {
  std::ifstream in(path);
  if (!in) throw GroupBuildError("cannot open csv file: " + path);
  GroupSpec spec;
  spec.kind = GroupKind::explicit_table;
  spec.generator_labels = generator_labels;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      row.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
    }
    spec.table.push_back(std::move(row));
  }
  return spec;
}

}  // namespace lab
