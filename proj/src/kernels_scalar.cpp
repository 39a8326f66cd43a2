#include <cmath>

#include "relspin/kernels.hpp"

namespace relspin::kernels::scalar {

// Operation order here is the contract the SIMD variants reproduce.

void contract(const MomentumBatch& p, const Vec3Batch& v, const Vec3BatchOut& out) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = p.mass[i];
        const double px = p.px[i], py = p.py[i], pz = p.pz[i];
        const double e = std::sqrt(m * m + ((px * px + py * py) + pz * pz));
        const double pv = (px * v.x[i] + py * v.y[i]) + pz * v.z[i];
        const double c = m / e;
        const double d = pv / (e * (e + m));
        out.x[i] = c * v.x[i] + d * px;
        out.y[i] = c * v.y[i] + d * py;
        out.z[i] = c * v.z[i] + d * pz;
    }
}

void alpha_norm(const MomentumBatch& p, const Vec3Batch& a, std::span<double> out) {
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double m = p.mass[i];
        const double px = p.px[i], py = p.py[i], pz = p.pz[i];
        const double e = std::sqrt(m * m + ((px * px + py * py) + pz * pz));
        const double pa = (px * a.x[i] + py * a.y[i]) + pz * a.z[i];
        out[i] = std::sqrt(pa * pa + m * m) / e;
    }
}

}  // namespace relspin::kernels::scalar
