#include "relspin/rng.hpp"

namespace relspin {

namespace {
constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
}

std::uint64_t mix64(std::uint64_t x) {
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

CounterRng CounterRng::split(std::uint64_t stream) const {
    return CounterRng(mix64(key_ ^ mix64(stream + kGolden)));
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const {
    return mix64(key_ + (counter + 1) * kGolden);
}

double CounterRng::uniform(std::uint64_t counter) const {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

}  // namespace relspin
