#pragma once
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "chain_linalg.hpp"
#include "filtrations.hpp"
#include "report.hpp"

namespace drw {

// Effective divisor as multiplicities on named points. Only the single point {t=0} enters module computations.
class ModulusDivisor {
public:
    ModulusDivisor() = default;
    explicit ModulusDivisor(std::map<std::string, int64_t> points);
    static ModulusDivisor at_origin(int64_t r);

    const std::map<std::string, int64_t>& points() const { return pts_; }
    int64_t multiplicity(const std::string& pt) const;
    bool is_zero() const { return pts_.empty(); }
    ModulusDivisor operator+(const ModulusDivisor& o) const;
    ModulusDivisor scaled(int64_t c) const;
    // pointwise ceiling / floor of E / m
    ModulusDivisor ceil_div(int64_t m) const;
    ModulusDivisor floor_div(int64_t m) const;
    ModulusDivisor reduced() const;
    bool operator==(const ModulusDivisor& o) const { return pts_ == o.pts_; }
    std::string to_string() const;

private:
    std::map<std::string, int64_t> pts_;
};

struct PDivDecomposition {
    int p = 2;
    std::vector<int> ladder;
    ModulusDivisor prime;               // E'
    std::vector<ModulusDivisor> parts;  // E_1, ..., E_s
    ModulusDivisor reconstruct() const;
};

PDivDecomposition p_div_decompose(int p, const ModulusDivisor& e, const std::vector<int>& ladder);

// D = D' + p^k D_k at the origin
struct LocalSplit {
    int64_t prime = 0;
    int64_t top = 0;
};
LocalSplit split_local(int p, int64_t r, int k);

WindowModule pole_space(int p, int level, int q, int64_t r, const Window& w);
// V^i([t]^m), m >= r, inside the window
std::vector<Form> zero_ideal_generators(int p, int level, int64_t r, const Window& w);
WindowModule zero_space(int p, int level, int q, int64_t r, const Window& w);

// Level-1 support spaces. Poles: Omega^q(log D)(ceil(D/p^k) - ceil(D/p^k)_red + E).
// Zeros: Omega^q(log D)(-ceil(D/p^k) - E).
WindowModule twisted_pole_space(int p, int q, int k, int64_t d, int64_t e, const Window& w);
WindowModule twisted_zero_space(int p, int q, int k, int64_t d, int64_t e, const Window& w);

struct BZPair {
    WindowModule B;
    WindowModule Z;
};

// B_n = F^{n-1} d(pole^{q-1}_n) and Z_n = F^n(pole^q_{n+1}); level 1 in the window p^n w
BZPair bn_zn_pole(const PrimeContext& ctx, int q, int64_t r, const Window& w);
// the same spaces cut out from unrestricted forms and intersected with the level-1 pole space
BZPair bn_zn_by_intersection(const PrimeContext& ctx, int q, int64_t r, const Window& w);
// B_{n,n}(d, e) and Z_{n,n}(d, e) from iterated Cartier pullbacks; level 1 in the window p^n w
BZPair twisted_bz(const PrimeContext& ctx, int q, int64_t d, int64_t e, const Window& w);

// (Omega/B) = A0 / B0 and (Omega/Z) = A1 / Z1, all level-1 regular forms in the window p^n w.
struct OmegaBZ {
    WindowModule A0, B0;
    WindowModule A1, Z1;
    bool has_z = false;
    int64_t omega_b_length() const { return A0.quotient_length(B0); }
    int64_t omega_z_length() const { return has_z ? A1.quotient_length(Z1) : 0; }
};
OmegaBZ omega_bz_zero(const PrimeContext& ctx, int q, int64_t r, const Window& w);

Report verify_strHWM(const PrimeContext& ctx, int q, int64_t r, const Window& w);
Report verify_long_mod_seq(const PrimeContext& ctx, int q, int64_t r, int r_w, const Window& w);
Report verify_zero_side(const PrimeContext& ctx, int q, int64_t r, const Window& w);
// intersection descriptions of B_n and Z_n for the pole side
Report verify_bn_zn(const PrimeContext& ctx, int q, int64_t r, const Window& w);
// F-detection of zeros on dV^n(Omega^0), degree one
Report verify_zero_cartesian(const PrimeContext& ctx, int64_t r, const Window& w);

}  // namespace drw
