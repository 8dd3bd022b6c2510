#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace lab {

// Exact finite-group arithmetic on element indices 0..n-1.  Index 0 is the
// identity and elements are numbered in BFS order from the identity over the
// generating set, so every downstream matrix is indexed reproducibly.
struct FiniteGroup {
  int order = 0;
  std::vector<uint16_t> mul_table;       // row-major order x order
  std::vector<int> inv_table;
  std::vector<std::string> element_labels;

  int mul(int a, int b) const { return mul_table[static_cast<size_t>(a) * order + b]; }
  int inv(int a) const { return inv_table[a]; }
  static constexpr int identity = 0;
};

// Symmetric generating multiset; `elements` keeps generator order from the
// spec, with missing inverses appended (involutions are not duplicated).
struct GeneratingSet {
  std::vector<int> elements;
  int degree() const { return static_cast<int>(elements.size()); }
};

enum class GroupKind {
  cyclic,
  product_of_cyclics,
  dihedral,
  symmetric_group,
  heisenberg_mod_p,
  explicit_table,
};

struct GroupSpec {
  GroupKind kind = GroupKind::cyclic;
  std::string name;
  // Per-kind parameters.
  int n = 0;                             // cyclic / dihedral / symmetric_group
  int p = 0;                             // heisenberg_mod_p
  std::vector<int> moduli;               // product_of_cyclics
  std::vector<std::vector<std::string>> table;  // explicit_table rows incl. header
  // Generators in the kind's natural coordinates.
  std::vector<std::vector<int>> generators;
  std::vector<std::string> generator_labels;    // explicit_table only
};

struct GroupBuildError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BuiltGroup {
  FiniteGroup group;
  GeneratingSet gens;
};

GroupSpec parse_group_spec(const nlohmann::json& doc);
GroupSpec parse_group_spec_file(const std::string& path);
// CSV multiplication table: header row of labels, then one row per element.
GroupSpec parse_multiplication_csv(const std::string& path,
                                   const std::vector<std::string>& generator_labels);

BuiltGroup build_group(const GroupSpec& spec, int order_cap = 4096);

// Closure of `seeds` under mul and inv; |result| always divides |G|.
std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& seeds);

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& h);
bool is_normal(const FiniteGroup& g, const std::vector<int>& h);
bool is_abelian(const FiniteGroup& g);

struct Quotient {
  FiniteGroup group;
  std::vector<int> projection;           // G index -> quotient index
  std::vector<std::vector<int>> cosets;  // quotient index -> members (sorted)
};

// Cosets are indexed canonically by minimal member; coset of the identity is 0.
Quotient quotient_group(const FiniteGroup& g, const std::vector<int>& normal_subgroup);

int element_order(const FiniteGroup& g, int a);

// Invariant factor decomposition d1 | d2 | ... | dr of a finite abelian group,
// obtained by repeatedly splitting off an element of maximal order.
std::vector<int> abelian_invariant_factors(const FiniteGroup& a);

}  // namespace lab
