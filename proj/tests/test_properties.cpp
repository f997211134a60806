#include "doctest.h"
#include "property_checks.hpp"

TEST_CASE("property suite") {
  for (const auto& check : diqkd::testing::property_suite()) {
    const auto c = check();
    INFO(c.name, ": worst ", c.worst, " over ", c.samples, " samples");
    CHECK(c.pass());
  }
}
