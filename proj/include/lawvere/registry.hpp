#pragma once

#include <string>
#include <vector>

#include "lawvere/distlaw.hpp"
#include "lawvere/monad.hpp"

namespace lawvere {

/// Built-in objects by name; unknown names throw structural_error listing the
/// known ones.
TheorySpec theory_by_name(const std::string& name);
DistributiveLaw law_by_name(const std::string& name);
DistributiveSeries series_by_name(const std::string& name);
/// "free_monoid" words are cut at `length` letters.
FinitaryMonadFragment monad_by_name(const std::string& name, std::size_t length = 2);

std::vector<std::string> theory_names();
std::vector<std::string> law_names();
std::vector<std::string> series_names();
std::vector<std::string> monad_names();

}  // namespace lawvere
