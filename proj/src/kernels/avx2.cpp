// Compiled with -mavx2 -mfma -ffp-contract=off; only reached after a CPUID check.

#include <immintrin.h>

#include <cmath>

#include "isoclust/kernels.hpp"
#include "kernels_internal.hpp"

namespace isoclust::kernels {

namespace {

// Points idx..idx+3 of an interleaved (x, y) array as separate x and y lanes.
inline void load_soa4(const double* xy, std::size_t idx, __m256d& xs, __m256d& ys) {
    const __m256d a = _mm256_loadu_pd(xy + 2 * idx);      // x0 y0 x1 y1
    const __m256d b = _mm256_loadu_pd(xy + 2 * idx + 4);  // x2 y2 x3 y3
    xs = _mm256_permute4x64_pd(_mm256_unpacklo_pd(a, b), 0xD8);
    ys = _mm256_permute4x64_pd(_mm256_unpackhi_pd(a, b), 0xD8);
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Cephes atan: range reduction to |x| <= 0.66 and a (4,5) rational approximation.
inline __m256d atan_pd(__m256d x) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    const __m256d sign = _mm256_and_pd(x, sign_mask);
    __m256d ax = _mm256_andnot_pd(sign_mask, x);

    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d big = _mm256_cmp_pd(ax, _mm256_set1_pd(2.41421356237309504880), _CMP_GT_OQ);
    const __m256d mid = _mm256_andnot_pd(big, _mm256_cmp_pd(ax, _mm256_set1_pd(0.66), _CMP_GT_OQ));

    const __m256d x_big = _mm256_div_pd(_mm256_set1_pd(-1.0), ax);
    const __m256d x_mid = _mm256_div_pd(_mm256_sub_pd(ax, one), _mm256_add_pd(ax, one));
    __m256d y0 = _mm256_setzero_pd();
    y0 = _mm256_blendv_pd(y0, _mm256_set1_pd(M_PI_4), mid);
    y0 = _mm256_blendv_pd(y0, _mm256_set1_pd(M_PI_2), big);
    ax = _mm256_blendv_pd(ax, x_mid, mid);
    ax = _mm256_blendv_pd(ax, x_big, big);

    const __m256d z = _mm256_mul_pd(ax, ax);
    __m256d p = _mm256_set1_pd(-8.750608600031904122785E-1);
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(-1.615753718733365076637E1));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(-7.500855792314704667340E1));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(-1.228866684490136173410E2));
    p = _mm256_add_pd(_mm256_mul_pd(p, z), _mm256_set1_pd(-6.485021904942025371773E1));
    __m256d q = _mm256_add_pd(z, _mm256_set1_pd(2.485846490142306297962E1));
    q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(1.650270098316988542046E2));
    q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(4.328810604912902668951E2));
    q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(4.853903996359136964868E2));
    q = _mm256_add_pd(_mm256_mul_pd(q, z), _mm256_set1_pd(1.945506571482613964425E2));

    __m256d r = _mm256_div_pd(_mm256_mul_pd(z, p), q);
    r = _mm256_add_pd(_mm256_mul_pd(ax, r), ax);
    const double morebits = 6.123233995736765886130E-17;
    __m256d corr = _mm256_setzero_pd();
    corr = _mm256_blendv_pd(corr, _mm256_set1_pd(0.5 * morebits), mid);
    corr = _mm256_blendv_pd(corr, _mm256_set1_pd(morebits), big);
    r = _mm256_add_pd(y0, _mm256_add_pd(r, corr));
    return _mm256_or_pd(r, sign);
}

double polyline_length_avx2(const Vec2* p, std::size_t n) {
    if (n < 2) return 0.0;
    const double* xy = reinterpret_cast<const double*>(p);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 < n; i += 4) {
        __m256d x0, y0, x1, y1;
        load_soa4(xy, i, x0, y0);
        load_soa4(xy, i + 1, x1, y1);
        const __m256d dx = _mm256_sub_pd(x1, x0);
        const __m256d dy = _mm256_sub_pd(y1, y0);
        acc = _mm256_add_pd(acc, _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy))));
    }
    double sum = hsum(acc);
    for (; i + 1 < n; ++i) {
        const double dx = p[i + 1].x - p[i].x;
        const double dy = p[i + 1].y - p[i].y;
        sum += std::sqrt(dx * dx + dy * dy);
    }
    return sum;
}

double signed_area_avx2(const Vec2* p, std::size_t n) {
    if (n < 3) return 0.0;
    const double* xy = reinterpret_cast<const double*>(p);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 < n; i += 4) {
        __m256d x0, y0, x1, y1;
        load_soa4(xy, i, x0, y0);
        load_soa4(xy, i + 1, x1, y1);
        acc = _mm256_add_pd(acc, _mm256_sub_pd(_mm256_mul_pd(x0, y1), _mm256_mul_pd(y0, x1)));
    }
    double sum = hsum(acc);
    for (; i + 1 < n; ++i) sum += p[i].x * p[i + 1].y - p[i].y * p[i + 1].x;
    sum += p[n - 1].x * p[0].y - p[n - 1].y * p[0].x;
    return 0.5 * sum;
}

void turning_avx2(const Vec2* p, std::size_t n, double* curvature, Vec2* normal, double* mass) {
    if (n < 3) return;
    const double* xy = reinterpret_cast<const double*>(p);
    double* nxy = reinterpret_cast<double*>(normal);
    const __m256d half = _mm256_set1_pd(0.5);
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d tiny = _mm256_set1_pd(1e-12);
    std::size_t i = 1;
    // lanes i..i+3 read points i-1..i+4
    for (; i + 4 < n; i += 4) {
        __m256d xa, ya, xb, yb, xc, yc;
        load_soa4(xy, i - 1, xa, ya);
        load_soa4(xy, i, xb, yb);
        load_soa4(xy, i + 1, xc, yc);
        const __m256d e0x = _mm256_sub_pd(xb, xa), e0y = _mm256_sub_pd(yb, ya);
        const __m256d e1x = _mm256_sub_pd(xc, xb), e1y = _mm256_sub_pd(yc, yb);
        const __m256d l0 = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(e0x, e0x), _mm256_mul_pd(e0y, e0y)));
        const __m256d l1 = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(e1x, e1x), _mm256_mul_pd(e1y, e1y)));
        const __m256d t0x = _mm256_div_pd(e0x, l0), t0y = _mm256_div_pd(e0y, l0);
        const __m256d t1x = _mm256_div_pd(e1x, l1), t1y = _mm256_div_pd(e1y, l1);
        const __m256d s = _mm256_sub_pd(_mm256_mul_pd(t0x, t1y), _mm256_mul_pd(t0y, t1x));
        const __m256d c1 = _mm256_add_pd(one, _mm256_add_pd(_mm256_mul_pd(t0x, t1x), _mm256_mul_pd(t0y, t1y)));
        const __m256d bx = _mm256_add_pd(t0x, t1x), by = _mm256_add_pd(t0y, t1y);
        const __m256d bl = _mm256_sqrt_pd(_mm256_add_pd(_mm256_mul_pd(bx, bx), _mm256_mul_pd(by, by)));
        const __m256d w = _mm256_mul_pd(half, _mm256_add_pd(l0, l1));

        const int degenerate = _mm256_movemask_pd(
            _mm256_or_pd(_mm256_cmp_pd(c1, tiny, _CMP_LT_OQ), _mm256_cmp_pd(bl, tiny, _CMP_LT_OQ)));
        if (degenerate != 0) {
            for (std::size_t k = i; k < i + 4; ++k)
                detail::turning_at(p[k - 1], p[k], p[k + 1], curvature[k - 1], normal[k - 1], mass[k - 1]);
            continue;
        }
        const __m256d phi = _mm256_mul_pd(_mm256_set1_pd(2.0), atan_pd(_mm256_div_pd(s, c1)));
        _mm256_storeu_pd(curvature + i - 1, _mm256_div_pd(phi, w));
        _mm256_storeu_pd(mass + i - 1, w);
        const __m256d nx = _mm256_div_pd(_mm256_sub_pd(_mm256_setzero_pd(), by), bl);
        const __m256d ny = _mm256_div_pd(bx, bl);
        const __m256d lo = _mm256_unpacklo_pd(nx, ny);  // nx0 ny0 nx2 ny2
        const __m256d hi = _mm256_unpackhi_pd(nx, ny);  // nx1 ny1 nx3 ny3
        _mm256_storeu_pd(nxy + 2 * (i - 1), _mm256_permute2f128_pd(lo, hi, 0x20));
        _mm256_storeu_pd(nxy + 2 * (i - 1) + 4, _mm256_permute2f128_pd(lo, hi, 0x31));
    }
    for (; i + 1 < n; ++i)
        detail::turning_at(p[i - 1], p[i], p[i + 1], curvature[i - 1], normal[i - 1], mass[i - 1]);
}

std::size_t row_crossings_avx2(const double* y_lo, const double* y_hi, const double* x_lo,
                               const double* dxdy, std::size_t n, double y, double* out) {
    std::size_t count = 0;
    const __m256d yy = _mm256_set1_pd(y);
    std::size_t e = 0;
    for (; e + 4 <= n; e += 4) {
        const __m256d lo = _mm256_loadu_pd(y_lo + e);
        const __m256d hi = _mm256_loadu_pd(y_hi + e);
        const __m256d in = _mm256_and_pd(_mm256_cmp_pd(lo, yy, _CMP_LE_OQ), _mm256_cmp_pd(yy, hi, _CMP_LT_OQ));
        int mask = _mm256_movemask_pd(in);
        if (mask == 0) continue;
        alignas(32) double xs[4];
        const __m256d t = _mm256_mul_pd(_mm256_sub_pd(yy, lo), _mm256_loadu_pd(dxdy + e));
        _mm256_store_pd(xs, _mm256_add_pd(_mm256_loadu_pd(x_lo + e), t));
        for (int k = 0; k < 4; ++k)
            if (mask & (1 << k)) out[count++] = xs[k];
    }
    for (; e < n; ++e)
        if (y_lo[e] <= y && y < y_hi[e]) out[count++] = detail::crossing_x(x_lo[e], y_lo[e], dxdy[e], y);
    return count;
}

}  // namespace

const KernelTable& avx2_kernels() {
    static const KernelTable table{"avx2", polyline_length_avx2, signed_area_avx2, turning_avx2,
                                   row_crossings_avx2};
    return table;
}

}  // namespace isoclust::kernels
