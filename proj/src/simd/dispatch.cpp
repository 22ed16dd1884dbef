#include <atomic>
#include <cstdlib>
#include <string>

#include "latinfo/errors.hpp"
#include "latinfo/simd/kernels.hpp"

namespace latinfo::simd {

namespace {

Isa initial_isa() noexcept {
    if (const char* env = std::getenv("LATINFO_SIMD")) {
        const std::string_view v(env);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::avx512}) {
            if (v == isa_name(isa) && isa_supported(isa)) return isa;
        }
    }
    return best_isa();
}

std::atomic<Isa>& selected() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return "scalar";
        case Isa::avx2: return "avx2";
        case Isa::avx512: return "avx512";
    }
    return "unknown";
}

bool isa_supported(Isa isa) noexcept {
    switch (isa) {
        case Isa::scalar: return true;
#if defined(LATINFO_HAVE_X86_KERNELS)
        case Isa::avx2: return __builtin_cpu_supports("avx2");
        case Isa::avx512: return __builtin_cpu_supports("avx512f");
#else
        default: return false;
#endif
    }
    return false;
}

Isa best_isa() noexcept {
    if (isa_supported(Isa::avx512)) return Isa::avx512;
    if (isa_supported(Isa::avx2)) return Isa::avx2;
    return Isa::scalar;
}

Isa active_isa() noexcept { return selected().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_supported(isa)) throw InvalidArgument("SIMD variant '" + std::string(isa_name(isa)) + "' not supported");
    selected().store(isa, std::memory_order_relaxed);
}

SquaredDistanceFn kernel(Isa isa) {
    if (!isa_supported(isa)) throw InvalidArgument("SIMD variant '" + std::string(isa_name(isa)) + "' not supported");
    switch (isa) {
#if defined(LATINFO_HAVE_X86_KERNELS)
        case Isa::avx2: return &avx2::squared_distances;
        case Isa::avx512: return &avx512::squared_distances;
#endif
        default: return &scalar::squared_distances;
    }
}

void squared_distances(const double* query, const double* soa, std::size_t stride, std::size_t count,
                       std::size_t dim, double* out) {
    static thread_local Isa cached_isa = Isa::scalar;
    static thread_local SquaredDistanceFn fn = &scalar::squared_distances;
    const Isa isa = active_isa();
    if (isa != cached_isa) {
        cached_isa = isa;
        fn = kernel(isa);
    }
    fn(query, soa, stride, count, dim, out);
}

}  // namespace latinfo::simd
