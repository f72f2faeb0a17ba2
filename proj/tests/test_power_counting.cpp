#include <doctest.h>

#include "pvfilter/errors.hpp"
#include "pvfilter/power_counting.hpp"

using namespace pvfilter;

TEST_CASE("canonical diagrams") {
  std::vector<int> minimal;
  for (const DiagramSpec& d : canonical_diagrams()) minimal.push_back(minimal_regulators(d));
  CHECK(minimal == std::vector<int>{4, 2, 2, 1});
  for (const ClaimRow& r : claim_table()) CHECK(r.satisfied);
}

TEST_CASE("degree formula") {
  const DiagramSpec two{"two-loop", 2, 2, 2};
  CHECK(superficial_degree(two, 0) == 2);
  CHECK(superficial_degree(two, 2) == -2);
  CHECK(minimal_regulators(two) == 2);
  CHECK(fermion_line_falloff(3) == 4);
  const DiagramSpec tadpole{"tadpole", 1, 1, 0};
  CHECK(superficial_degree(tadpole, 0) == 3);
  CHECK(superficial_degree(tadpole, 4) == -1);
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(minimal_regulators(DiagramSpec{"photons", 1, 0, 2}), NoFermionLines);
  CHECK_THROWS_AS(superficial_degree(DiagramSpec{"none", 0, 1, 1}, 0), InvalidArgument);
  CHECK_THROWS_AS(superficial_degree(DiagramSpec{"neg", 1, -1, 1}, 0), InvalidArgument);
  CHECK(validate(DiagramSpec{"odd", 1, 1, 3}).size() == 1);
  CHECK(validate(DiagramSpec{"vertex", 1, 2, 1}).empty());
}
