#include "lab/zoo.hpp"

#include <array>

namespace lab {

namespace {

using nlohmann::json;

json cyclic(int n) {
  return {{"kind", "cyclic"},
          {"name", "c" + std::to_string(n)},
          {"params", {{"n", n}}},
          {"generators", {1}}};
}

json product(const std::string& name, std::vector<int> moduli) {
  json gens = json::array();
  for (size_t i = 0; i < moduli.size(); ++i) {
    std::vector<int> unit(moduli.size(), 0);
    unit[i] = 1;
    gens.push_back(unit);
  }
  return {{"kind", "product_of_cyclics"},
          {"name", name},
          {"params", {{"moduli", moduli}}},
          {"generators", gens}};
}

// S3 multiplication table spelled out as an explicit-table demo entry.
json s3_table() {
  const std::array<std::array<int, 3>, 6> perms = {{
      {0, 1, 2},  // e
      {1, 0, 2},  // (12)
      {2, 1, 0},  // (13)
      {0, 2, 1},  // (23)
      {1, 2, 0},  // (123)
      {2, 0, 1},  // (132)
  }};
  const std::array<std::string, 6> labels = {"e", "(12)", "(13)", "(23)", "(123)", "(132)"};
  auto find = [&](const std::array<int, 3>& p) {
    for (size_t i = 0; i < perms.size(); ++i)
      if (perms[i] == p) return static_cast<int>(i);
    return -1;
  };
  json table = json::array();
  table.push_back(labels);
  for (const auto& a : perms) {
    json row = json::array();
    for (const auto& b : perms) {
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = a[b[i]];
      row.push_back(labels[find(c)]);
    }
    table.push_back(row);
  }
  return {{"kind", "explicit_table"},
          {"name", "table_s3"},
          {"params", {{"table", table}}},
          {"generators", {"(12)", "(123)"}}};
}

}  // namespace

std::vector<std::pair<std::string, nlohmann::json>> builtin_zoo() {
  std::vector<std::pair<std::string, json>> zoo;
  zoo.emplace_back("c12", cyclic(12));
  zoo.emplace_back("c64", cyclic(64));
  zoo.emplace_back("c256", cyclic(256));
  zoo.emplace_back("z2_4", product("z2_4", {2, 2, 2, 2}));
  zoo.emplace_back("z2_6", product("z2_6", {2, 2, 2, 2, 2, 2}));
  zoo.emplace_back("z6x2", product("z6x2", {6, 2}));
  zoo.emplace_back("z16x4", product("z16x4", {16, 4}));
  zoo.emplace_back("d16", json{{"kind", "dihedral"},
                               {"name", "d16"},
                               {"params", {{"n", 16}}},
                               {"generators", {{1, 0}, {0, 1}}}});
  zoo.emplace_back("heis3", json{{"kind", "heisenberg_mod_p"},
                                 {"name", "heis3"},
                                 {"params", {{"p", 3}}},
                                 {"generators", {{1, 0, 0}, {0, 1, 0}}}});
  // Non-doubling control: expander-like Cayley graph of S4.
  zoo.emplace_back("s4", json{{"kind", "symmetric_group"},
                              {"name", "s4"},
                              {"params", {{"n", 4}}},
                              {"generators", {{2, 1, 3, 4}, {2, 3, 4, 1}}}});
  zoo.emplace_back("table_s3", s3_table());
  return zoo;
}

}  // namespace lab
