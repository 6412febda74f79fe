#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "chain_linalg.hpp"
#include "modulus_spaces.hpp"
#include "report.hpp"

namespace drw {

// residue of a * b; the degrees must add up to 1
int64_t pair(const Form& a, const Form& b);

enum class AnnihilatorSide { PoleOfZero, ZeroOfPole };

struct AnnihilatorSpec {
    AnnihilatorSide side = AnnihilatorSide::PoleOfZero;
    int64_t r = 0;
    int q = 1;  // degree of the annihilator itself
    Window window;
};

// {w in the window : w * g regular for every generator g of the opposite space}
WindowModule annihilator_space(const PrimeContext& ctx, const AnnihilatorSpec& spec);

struct PairingReport {
    DenseMatrix gram;  // rows: generators of the left numerator, columns: right numerator
    std::vector<int64_t> divisors;
    int64_t left_length = 0, right_length = 0, rank_length = 0;
    int64_t left_kernel_length = 0, right_kernel_length = 0;
    bool well_defined = true;
    bool perfect = false;
    std::string witness;
};

// (L / Lsub) x (R / Rsub) -> Z/p^N via the residue of the product
PairingReport residue_pairing(const WindowModule& L, const WindowModule& Lsub, const WindowModule& R,
                              const WindowModule& Rsub, int N);

struct LocalDualityResult {
    Report report;
    PairingReport pairing;
};

// q is the degree of the pole side
LocalDualityResult verify_local_duality(const PrimeContext& ctx, int q, int64_t r, const Window& w);

struct CartierDualityResult {
    Report report;
    PairingReport omega_b;  // (Omega/B)^q against Z_n^{1-q}
    PairingReport omega_z;  // (Omega/Z)^q against B_n^{1-q}
};

// n may be 0; q is the degree of the zero side
CartierDualityResult verify_cartier_duality(int p, int n, int q, int64_t r, const Window& w);

enum class LogSign { Pole, Zero };

struct LogHomology {
    int64_t kernel_length = 0;
    int64_t cokernel_length = 0;
    bool image_in_target = true;
    int64_t fil_image_length = -1;  // pole side only
};

LogHomology log_complex_homology(const PrimeContext& ctx, LogSign sign, int q, int64_t r, const Window& w);

// Ker(1 - C) on the regular q = 0 window, checked against the constants and a wider window
Report verify_kernel_one_minus_c(const PrimeContext& ctx, const Window& w, int64_t guard);

}  // namespace drw
