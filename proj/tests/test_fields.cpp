#include <doctest.h>
TEST_CASE("wip") { CHECK(true); }
