#pragma once

#include <cmath>
#include <cstdint>

namespace wscap {

// Counter-based RNG (Philox4x32-10).  Output is a pure function of
// (master_seed, replicate_index, substream_counter, block position), so
// replicate streams are reproducible independently of scheduling order.
struct RngStream {
    std::uint64_t master_seed = 0;
    std::uint32_t replicate_index = 0;
    std::uint32_t substream_counter = 0;

    RngStream substream(std::uint32_t s) const {
        return {master_seed, replicate_index, s};
    }
    RngStream replicate(std::uint32_t r) const {
        return {master_seed, r, substream_counter};
    }
};

namespace detail {

inline void philox_round(std::uint32_t c[4], std::uint32_t k0, std::uint32_t k1) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    c[0] = hi1 ^ c[1] ^ k0;
    c[1] = lo1;
    c[2] = hi0 ^ c[3] ^ k1;
    c[3] = lo0;
}

inline void philox4x32_10(const std::uint32_t ctr[4], const std::uint32_t key[2],
                          std::uint32_t out[4]) {
    std::uint32_t c[4] = {ctr[0], ctr[1], ctr[2], ctr[3]};
    std::uint32_t k0 = key[0], k1 = key[1];
    for (int round = 0; round < 10; ++round) {
        philox_round(c, k0, k1);
        k0 += 0x9E3779B9u;
        k1 += 0xBB67AE85u;
    }
    out[0] = c[0];
    out[1] = c[1];
    out[2] = c[2];
    out[3] = c[3];
}

// Marsaglia-Tsang ziggurat tables for the standard normal (128 layers).
struct ZigguratTables {
    std::uint32_t kn[128];
    double wn[128];
    double fn[128];

    ZigguratTables() {
        const double m1 = 2147483648.0;
        double dn = 3.442619855899, tn = dn;
        const double vn = 9.91256303526217e-3;
        double q = vn / std::exp(-0.5 * dn * dn);
        kn[0] = static_cast<std::uint32_t>((dn / q) * m1);
        kn[1] = 0;
        wn[0] = q / m1;
        wn[127] = dn / m1;
        fn[0] = 1.0;
        fn[127] = std::exp(-0.5 * dn * dn);
        for (int i = 126; i >= 1; --i) {
            dn = std::sqrt(-2.0 * std::log(vn / dn + std::exp(-0.5 * dn * dn)));
            kn[i + 1] = static_cast<std::uint32_t>((dn / tn) * m1);
            tn = dn;
            fn[i] = std::exp(-0.5 * dn * dn);
            wn[i] = dn / m1;
        }
    }
};

inline const ZigguratTables& ziggurat() {
    static const ZigguratTables t;
    return t;
}

}  // namespace detail

// Consumes one Philox substream: uniforms in (0,1), standard normals
// (ziggurat), unit-rate exponentials.
class RandomSource {
  public:
    explicit RandomSource(const RngStream& s)
        : key_{static_cast<std::uint32_t>(s.master_seed),
               static_cast<std::uint32_t>(s.master_seed >> 32)},
          hi_{s.replicate_index, s.substream_counter} {}

    std::uint32_t next_u32() {
        if (pos_ == 4) refill();
        return buf_[pos_++];
    }

    double uniform() {
        const std::uint64_t a = next_u32();
        const std::uint64_t b = next_u32();
        const std::uint64_t m = ((a << 32) | b) >> 11;  // 53 bits
        return (static_cast<double>(m) + 0.5) * 0x1.0p-53;
    }

    double normal() {
        const auto& z = detail::ziggurat();
        for (;;) {
            const std::int32_t hz = static_cast<std::int32_t>(next_u32());
            const std::uint32_t iz = static_cast<std::uint32_t>(hz) & 127u;
            const std::uint32_t ahz =
                hz < 0 ? static_cast<std::uint32_t>(-static_cast<std::int64_t>(hz))
                       : static_cast<std::uint32_t>(hz);
            if (ahz < z.kn[iz]) return hz * z.wn[iz];
            const double value = normal_fix(hz, iz);
            if (!std::isnan(value)) return value;
        }
    }

    double exponential() { return -std::log(uniform()); }

  private:
    // Slow path for a rejected ziggurat layer; NaN means "draw again".
    double normal_fix(std::int32_t hz, std::uint32_t iz) {
        const auto& z = detail::ziggurat();
        const double r = 3.442619855899;
        const double x = hz * z.wn[iz];
        if (iz == 0) {
            // Tail beyond |x| > r.
            for (;;) {
                const double xt = -std::log(uniform()) / r;
                const double yt = -std::log(uniform());
                if (yt + yt >= xt * xt) return hz > 0 ? r + xt : -r - xt;
            }
        }
        if (z.fn[iz] + uniform() * (z.fn[iz - 1] - z.fn[iz]) < std::exp(-0.5 * x * x))
            return x;
        return std::nan("");
    }

    void refill() {
        const std::uint32_t ctr[4] = {static_cast<std::uint32_t>(block_),
                                      static_cast<std::uint32_t>(block_ >> 32),
                                      hi_[0], hi_[1]};
        detail::philox4x32_10(ctr, key_, buf_);
        ++block_;
        pos_ = 0;
    }

    std::uint32_t key_[2];
    std::uint32_t hi_[2];
    std::uint64_t block_ = 0;
    std::uint32_t buf_[4] = {0, 0, 0, 0};
    int pos_ = 4;
};

}  // namespace wscap
