#include "lawvere/registry.hpp"

#include <functional>
#include <map>

namespace lawvere {

namespace {

template <typename T>
using Table = std::map<std::string, std::function<T()>>;

const Table<TheorySpec>& theories() {
  static const Table<TheorySpec> table = {
      {"abelian_group", builtin::abelian_group},
      {"commutative_monoid", builtin::commutative_monoid},
      {"identity", builtin::identity},
      {"monoid", builtin::monoid},
      {"monoid_composite", builtin::monoid_composite},
      {"pointed", builtin::pointed},
      {"ring", builtin::ring},
      {"ring3", builtin::ring3},
      {"semigroup", builtin::semigroup},
  };
  return table;
}

const Table<DistributiveLaw>& law_table() {
  static const Table<DistributiveLaw> table = {
      {"mutant_ring", laws::mutant_ring},
      {"pointed_abelian", laws::pointed_abelian},
      {"pointed_abelian_zero", laws::pointed_abelian_zero},
      {"pointed_semigroup", laws::pointed_semigroup},
      {"ring", laws::ring},
      {"semigroup_ring", laws::semigroup_ring},
  };
  return table;
}

const Table<DistributiveSeries>& series_table() {
  static const Table<DistributiveSeries> table = {
      {"identity", laws::identity_series},
      {"mutant_ring3", laws::mutant_ring_series},
      {"ring3", laws::ring_series},
  };
  return table;
}

template <typename T>
std::vector<std::string> keys(const Table<T>& table) {
  std::vector<std::string> out;
  for (const auto& [k, v] : table) out.push_back(k);
  return out;
}

template <typename T>
T lookup(const Table<T>& table, const std::string& kind, const std::string& name) {
  auto it = table.find(name);
  if (it == table.end()) {
    std::string known;
    for (const auto& k : keys(table)) known += (known.empty() ? "" : ", ") + k;
    throw structural_error("unknown " + kind + " '" + name + "' (known: " + known + ")");
  }
  return it->second();
}

}  // namespace

TheorySpec theory_by_name(const std::string& name) { return lookup(theories(), "theory", name); }
DistributiveLaw law_by_name(const std::string& name) { return lookup(law_table(), "law", name); }
DistributiveSeries series_by_name(const std::string& name) { return lookup(series_table(), "series", name); }

FinitaryMonadFragment monad_by_name(const std::string& name, std::size_t length) {
  if (name == "identity") return fragments::identity();
  if (name == "pointed") return fragments::pointed();
  if (name == "free_monoid") return fragments::free_monoid(length);
  throw structural_error("unknown monad '" + name + "' (known: free_monoid, identity, pointed)");
}

std::vector<std::string> theory_names() { return keys(theories()); }
std::vector<std::string> law_names() { return keys(law_table()); }
std::vector<std::string> series_names() { return keys(series_table()); }
std::vector<std::string> monad_names() { return {"free_monoid", "identity", "pointed"}; }

}  // namespace lawvere
