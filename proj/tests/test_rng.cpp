#include <doctest.h>

#include "surecp/rng.hpp"

using namespace surecp;

TEST_CASE("splitmix64 reference vectors") {
    std::uint64_t state = 0;
    CHECK(splitmix64_next(state) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64_next(state) == 0x6E789E6AA1B965F4ULL);
    CHECK(splitmix64_next(state) == 0x06C45D188009454FULL);
}

TEST_CASE("xoshiro256** reference vectors") {
    auto rng = Rng::from_state({1, 2, 3, 4});
    CHECK(rng.next_u64() == 11520ULL);
    CHECK(rng.next_u64() == 0ULL);
    CHECK(rng.next_u64() == 1509978240ULL);
    CHECK(rng.next_u64() == 1215971899390074240ULL);
}
