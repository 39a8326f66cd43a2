#include <immintrin.h>

#include "relspin/kernels.hpp"

namespace relspin::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

inline __m256d load(std::span<const double> s, std::size_t i) {
    return _mm256_loadu_pd(s.data() + i);
}

inline __m256d dot3(__m256d ax, __m256d ay, __m256d az, __m256d bx, __m256d by, __m256d bz) {
    return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(ax, bx), _mm256_mul_pd(ay, by)), _mm256_mul_pd(az, bz));
}

}  // namespace

void contract(const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out) {
    const std::size_t n = p.size();
    const std::size_t body = n - n % kLanes;
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d m = load(p.mass, i);
        const __m256d px = load(p.px, i), py = load(p.py, i), pz = load(p.pz, i);
        const __m256d vx = load(v.x, i), vy = load(v.y, i), vz = load(v.z, i);
        const __m256d e = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(m, m), dot3(px, py, pz, px, py, pz)));
        const __m256d pv = dot3(px, py, pz, vx, vy, vz);
        const __m256d c = _mm256_div_pd(m, e);
        const __m256d d = _mm256_div_pd(pv, _mm256_mul_pd(e, _mm256_add_pd(e, m)));
        _mm256_storeu_pd(out.x.data() + i, _mm256_add_pd(_mm256_mul_pd(c, vx), _mm256_mul_pd(d, px)));
        _mm256_storeu_pd(out.y.data() + i, _mm256_add_pd(_mm256_mul_pd(c, vy), _mm256_mul_pd(d, py)));
        _mm256_storeu_pd(out.z.data() + i, _mm256_add_pd(_mm256_mul_pd(c, vz), _mm256_mul_pd(d, pz)));
    }
    if (body < n) {
        const MomentumBatch tail{p.mass.subspan(body), p.px.subspan(body), p.py.subspan(body), p.pz.subspan(body)};
        scalar::contract(tail, {v.x.subspan(body), v.y.subspan(body), v.z.subspan(body)},
                         {out.x.subspan(body), out.y.subspan(body), out.z.subspan(body)});
    }
}

void alpha_norm(const MomentumBatch& p, const Vec3Batch& a, std::span<double> out) {
    const std::size_t n = p.size();
    const std::size_t body = n - n % kLanes;
    for (std::size_t i = 0; i < body; i += kLanes) {
        const __m256d m = load(p.mass, i);
        const __m256d px = load(p.px, i), py = load(p.py, i), pz = load(p.pz, i);
        const __m256d m2 = _mm256_mul_pd(m, m);
        const __m256d e = _mm256_sqrt_pd(_mm256_add_pd(m2, dot3(px, py, pz, px, py, pz)));
        const __m256d pa = dot3(px, py, pz, load(a.x, i), load(a.y, i), load(a.z, i));
        const __m256d num = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(pa, pa), m2));
        _mm256_storeu_pd(out.data() + i, _mm256_div_pd(num, e));
    }
    if (body < n) {
        const MomentumBatch tail{p.mass.subspan(body), p.px.subspan(body), p.py.subspan(body), p.pz.subspan(body)};
        scalar::alpha_norm(tail, {a.x.subspan(body), a.y.subspan(body), a.z.subspan(body)}, out.subspan(body));
    }
}

}  // namespace relspin::kernels::avx2
