#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lawvere/layered.hpp"
#include "lawvere/report.hpp"

namespace lawvere {

/// lambda: ST => TS. `rewrite` takes a canonical element with layers
/// (inner, outer), i.e. S on top, and returns one with layers (outer, inner).
struct DistributiveLaw {
  std::string name;
  TheorySpec inner;  // S
  TheorySpec outer;  // T
  LayerSwap rewrite;

  Layers input_layers() const { return {&inner, &outer}; }
  Layers output_layers() const { return {&outer, &inner}; }
};

/// Applies the law to an S-over-T element; the result is canonical.
Layered apply_law(const DistributiveLaw& law, const Layered& e);
/// Term form: reads t with the S-over-T layering, rewrites, flattens.
Term apply_law(const DistributiveLaw& law, const Term& t);

/// Per-diagram outcome. Failures hold {input, leftValue, rightValue}.
struct AxiomReport {
  std::string diagram;
  std::size_t sample_count = 0;
  std::vector<nlohmann::json> failures;

  bool ok() const { return failures.empty(); }
  nlohmann::json to_json() const;
};

struct LawCheck {
  std::vector<AxiomReport> diagrams;  // unit-S, mult-S, unit-T, mult-T, naturality
  Report summary;

  bool ok() const { return summary.ok(); }
  const AxiomReport& diagram(std::string_view name) const;
};

/// Samples elements of S X, T X, SSTX, STTX and STX and compares both legs of
/// the unit and multiplication diagrams and of the naturality square.
LawCheck check_law_axioms(const DistributiveLaw& law, const Sampler& sampler);

/// Theories T1..Tn (index 0 outermost in the composite) with laws
/// lambda_ij : Ti Tj => Tj Ti for i > j, keyed by (i, j).
struct LayerStack {
  std::vector<TheorySpec> layers;
  std::map<std::pair<std::size_t, std::size_t>, DistributiveLaw> laws;

  Layers layer_list() const;
  const DistributiveLaw& law(std::size_t i, std::size_t j) const;
};
using DistributiveSeries = LayerStack;

/// Normal form of an arbitrary term over the union signature: operations are
/// inserted one at a time and pushed to their layer with the laws.
Layered evaluate(const LayerStack& stack, const Term& t);

/// The composite TS. Refuses a law that fails check_law_axioms on the default
/// sampler unless `verify` is false.
TheorySpec composite_theory(const DistributiveLaw& law, bool verify = true);
/// The composite T1...Tn of a series.
TheorySpec composite_theory(std::string name, const DistributiveSeries& series);

/// Hexagon for each i > j > k, plus agreement of the two bracketings
/// T1(T2...Tn) and (T1...Tn-1)Tn of the composite multiplication.
Report check_yang_baxter(const DistributiveSeries& series, const Sampler& sampler);

/// A step of a layered computation: swap (apply the law) or merge at a level.
struct LayerStep {
  enum Kind { swap, merge } kind;
  std::size_t level;
};
/// Runs steps on e, whose layers are the series indices `layers`. Updates
/// `layers` in place.
Layered run_steps(const LayerStack& stack, std::vector<std::size_t>& layers, Layered e,
                  const std::vector<LayerStep>& steps);

namespace laws {
/// Monoid over abelian group: full expansion of products of sums.
DistributiveLaw ring();
/// Semigroup over abelian group: expansion without the empty word.
DistributiveLaw semigroup_ring();
/// Semigroup over pointed sets: points deleted from words, all-point words
/// sent to the point.
DistributiveLaw pointed_semigroup();
/// Pointed sets over abelian group: the point becomes a one-summand sum.
DistributiveLaw pointed_abelian();
/// Keeps only the first summand of each factor in products of two or more
/// factors. Not a distributive law.
DistributiveLaw mutant_ring();
/// Either side may be builtin::identity().
DistributiveLaw identity(TheorySpec inner, TheorySpec outer);

/// C (abelian groups), B (pointed sets), A (semigroups), C outermost.
DistributiveSeries ring_series();
/// Pointed sets over abelian group sending the point to zero. Fails the
/// outer unit diagram, so it is not a distributive law.
DistributiveLaw pointed_abelian_zero();
/// As ring_series with B-over-C replaced by pointed_abelian_zero, which is
/// incompatible with the other two laws.
DistributiveSeries mutant_ring_series();
/// C, identity theory, A.
DistributiveSeries identity_series();
}  // namespace laws

namespace builtin {
/// Composite of laws::ring().
TheorySpec ring();
/// Composite of laws::pointed_semigroup(): monoids.
TheorySpec monoid_composite();
/// Composite of the ring series.
TheorySpec ring3();
}  // namespace builtin

}  // namespace lawvere
