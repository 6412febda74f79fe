#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "witt_core.hpp"

namespace drw {

// s == 0: b*[t]^i (degree 0) or b*[t]^i dlog t (degree 1), j is the exponent i.
// s >= 1: V^s(c[t]^j) or dV^s(c[t]^j) with p not dividing j.
struct Key {
    int s = 0;
    int64_t j = 0;
    bool operator<(const Key& o) const { return s != o.s ? s < o.s : j < o.j; }
    bool operator==(const Key& o) const { return s == o.s && j == o.j; }
};

// Rational weight num / p^e.
struct WeightQ {
    int64_t num = 0;
    int e = 0;
};

int compare_weight(int p, const WeightQ& a, const WeightQ& b);
WeightQ key_weight(const Key& k);
std::string weight_to_string(int p, const WeightQ& w);

// Closed weight interval [lo / p^e, hi / p^e].
struct Window {
    int64_t lo = 0;
    int64_t hi = 0;
    int e = 0;

    bool contains(int p, const Key& k) const;
    bool contains_weight(int p, const WeightQ& w) const;
    Window scaled_up(int p, int k) const;
    Window scaled_down(int, int k) const { return {lo, hi, e + k}; }
    // all normal-form keys of a level-n module whose weight lies in the window
    std::vector<Key> keys(int p, int n) const;
    std::string to_string(int p) const;
};

Window window_hull(int p, const Window& a, const Window& b);

class Form {
public:
    Form() = default;
    Form(int p, int n, int q);
    Form(const PrimeContext& ctx, int q) : Form(ctx.p, ctx.n, q) {}

    int p() const { return p_; }
    int n() const { return n_; }
    int q() const { return q_; }
    int64_t modulus(const Key& k) const;
    int64_t coeff(const Key& k) const;
    const std::map<Key, int64_t>& terms() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    size_t size() const { return c_.size(); }

    void add_term(const Key& k, int64_t c);
    // adds V^s(c[t]^J), or V^s(c[t]^J) dlog t in degree 1, and renormalizes
    void add_V(int s, int64_t J, int64_t c);

    bool operator==(const Form& o) const { return p_ == o.p_ && n_ == o.n_ && q_ == o.q_ && c_ == o.c_; }
    bool operator!=(const Form& o) const { return !(*this == o); }

private:
    int p_ = 2, n_ = 1, q_ = 0;
    std::map<Key, int64_t> c_;
};

Form single(int p, int n, int q, const Key& k, int64_t c = 1);

Form nf_add(const Form& x, const Form& y);
Form nf_sub(const Form& x, const Form& y);
Form nf_scale(const Form& x, int64_t c);
Form nf_F(const Form& x);
Form nf_V(const Form& x);
Form nf_R(const Form& x);
Form nf_pline(const Form& x);
Form nf_Fs(const Form& x, int s);
Form nf_Vs(const Form& x, int s);
Form nf_Rs(const Form& x, int s);
Form nf_d(const Form& x);
Form nf_times_dlog(const Form& x);
Form nf_mul0(const Form& a, const Form& b);
Form nf_mul01(const Form& a, const Form& w);
// any degrees; products landing in degree 2 vanish
Form nf_mul(const Form& a, const Form& b);

Form nf_teich(int p, int n, int64_t c, int64_t i);
Form dlog_monomial(int p, int n, int64_t c, int64_t i);
int64_t residue(const Form& w);

Form cartier(const Form& w);
Form inv_cartier(const Form& w);

bool is_regular(const Form& x, bool log_poles = false);

WittVector<LaurentRing> recompose(const Form& x);
Form decompose(const WittVector<LaurentRing>& w);
bool fil_log_membership(const Form& x, int64_t r);

struct SupportProfile {
    std::optional<std::pair<int64_t, int64_t>> head;
    std::map<int, std::pair<int64_t, int64_t>> deep;
    std::optional<WeightQ> min_weight;
    std::optional<WeightQ> max_weight;
    // smallest integer m with every weight >= -m, 0 for regular-looking support
    int64_t pole_order = 0;
};

SupportProfile support_profile(const Form& x);
std::string to_string(const Form& x);

}  // namespace drw
