#include "chain_linalg.hpp"

#include <algorithm>
#include <deque>

namespace drw {

HowellForm::HowellForm(int p, int N) : p_(p), N_(N), P_(ipow(p, N)) {}

void HowellForm::normalize(SparseRow& r) const {
    std::sort(r.begin(), r.end());
    SparseRow out;
    out.reserve(r.size());
    for (const auto& [c, v] : r) {
        int64_t x = mod(v, P_);
        if (!out.empty() && out.back().first == c) {
            out.back().second = mod(out.back().second + x, P_);
            if (out.back().second == 0) out.pop_back();
        } else if (x != 0) {
            out.emplace_back(c, x);
        }
    }
    r.swap(out);
}

void HowellForm::scale(SparseRow& x, int64_t f) const {
    SparseRow out;
    out.reserve(x.size());
    for (const auto& [c, v] : x) {
        int64_t y = mulmod(v, f, P_);
        if (y) out.emplace_back(c, y);
    }
    x.swap(out);
}

// x <- x - f*y
void HowellForm::axpy(SparseRow& x, int64_t f, const SparseRow& y) const {
    SparseRow out;
    out.reserve(x.size() + y.size());
    size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        int64_t v;
        int c;
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            c = x[i].first;
            v = x[i++].second;
        } else if (i == x.size() || y[j].first < x[i].first) {
            c = y[j].first;
            v = mod(-mulmod(f, y[j++].second, P_), P_);
        } else {
            c = x[i].first;
            v = mod(x[i++].second - mulmod(f, y[j++].second, P_), P_);
        }
        if (v) out.emplace_back(c, v);
    }
    x.swap(out);
}

void HowellForm::insert(SparseRow r) {
    normalize(r);
    std::deque<SparseRow> work;
    work.push_back(std::move(r));
    while (!work.empty()) {
        SparseRow x = std::move(work.front());
        work.pop_front();
        while (!x.empty()) {
            const int c = x[0].first;
            const int64_t a = x[0].second;
            const int v = vp(a, p_);
            auto it = piv_.find(c);
            if (it == piv_.end()) {
                int64_t unit = a / ipow(p_, v);
                scale(x, invmod(unit, P_));
                if (v > 0) {
                    SparseRow ann = x;
                    scale(ann, ipow(p_, N_ - v));
                    if (!ann.empty()) work.push_back(std::move(ann));
                }
                piv_.emplace(c, std::move(x));
                break;
            }
            SparseRow& y = it->second;
            const int w = vp(y[0].second, p_);
            if (v >= w) {
                axpy(x, a / ipow(p_, w), y);
                continue;
            }
            int64_t unit = a / ipow(p_, v);
            scale(x, invmod(unit, P_));
            SparseRow old = std::move(y);
            y = x;
            SparseRow ann = y;
            scale(ann, ipow(p_, N_ - v));
            if (!ann.empty()) work.push_back(std::move(ann));
            axpy(old, ipow(p_, w - v), y);
            x = std::move(old);
        }
    }
}

SparseRow HowellForm::reduce(SparseRow x) const {
    normalize(x);
    while (!x.empty()) {
        const int c = x[0].first;
        auto it = piv_.find(c);
        if (it == piv_.end()) return x;
        const int v = vp(x[0].second, p_);
        const int w = vp(it->second[0].second, p_);
        if (v < w) return x;
        axpy(x, x[0].second / ipow(p_, w), it->second);
    }
    return x;
}

int64_t HowellForm::length() const {
    int64_t len = 0;
    for (const auto& [c, row] : piv_) {
        (void)c;
        len += N_ - vp(row[0].second, p_);
    }
    return len;
}

Ambient::Ambient(int p, std::vector<BlockSpec> blocks) : p_(p), blocks_(std::move(blocks)) {
    for (size_t b = 0; b < blocks_.size(); ++b) {
        const auto& bs = blocks_[b];
        std::map<Key, int> idx;
        N_ = std::max(N_, bs.level);
        if (bs.level >= 1 && bs.q >= 0 && bs.q <= 1 && bs.window.lo <= bs.window.hi) {
            for (const Key& k : bs.window.keys(p, bs.level)) {
                idx[k] = static_cast<int>(cols_.size());
                cols_.emplace_back(static_cast<int>(b), k);
                exps_.push_back(bs.level - k.s);
            }
        }
        index_.push_back(std::move(idx));
    }
    if (N_ == 0) N_ = 1;
}

std::shared_ptr<const Ambient> Ambient::make(int p, std::vector<BlockSpec> blocks) {
    return std::make_shared<const Ambient>(p, std::move(blocks));
}

std::shared_ptr<const Ambient> Ambient::single(int p, int level, int q, const Window& w) {
    return make(p, {BlockSpec{level, q, w}});
}

int Ambient::col(int block, const Key& k) const {
    const auto& idx = index_[block];
    auto it = idx.find(k);
    return it == idx.end() ? -1 : it->second;
}

int64_t Ambient::full_length() const {
    int64_t s = 0;
    for (int e : exps_) s += e;
    return s;
}

Vec Ambient::zero_vec() const {
    Vec v;
    for (const auto& b : blocks_) v.emplace_back(p_, std::max(b.level, 0), std::min(std::max(b.q, 0), 1));
    return v;
}

bool Ambient::embed(const Vec& v, int M, int offset, SparseRow& out) const {
    if (v.size() != blocks_.size()) fail(ErrorKind::Context, "vector has the wrong number of blocks");
    for (size_t b = 0; b < v.size(); ++b) {
        if (v[b].is_zero()) continue;
        if (v[b].n() != blocks_[b].level || v[b].q() != blocks_[b].q)
            fail(ErrorKind::Context, "vector block does not match the ambient level or degree");
        for (const auto& [k, c] : v[b].terms()) {
            int cc = col(static_cast<int>(b), k);
            if (cc < 0) return false;
            out.emplace_back(cc + offset, c * ipow(p_, M - exps_[cc]));
        }
    }
    return true;
}

Vec Ambient::unembed(const SparseRow& r, int M, int offset) const {
    Vec v = zero_vec();
    for (const auto& [c, x] : r) {
        int cc = c - offset;
        if (cc < 0 || cc >= dim()) continue;
        int64_t scale = ipow(p_, M - exps_[cc]);
        if (x % scale != 0) fail(ErrorKind::Context, "row entry is not in the embedded coordinate group");
        v[cols_[cc].first].add_term(cols_[cc].second, x / scale);
    }
    return v;
}

bool Ambient::same_as(const Ambient& o) const {
    if (p_ != o.p_ || blocks_.size() != o.blocks_.size()) return false;
    for (size_t b = 0; b < blocks_.size(); ++b) {
        const auto &x = blocks_[b], &y = o.blocks_[b];
        if (x.level != y.level || x.q != y.q || x.window.lo != y.window.lo || x.window.hi != y.window.hi ||
            x.window.e != y.window.e)
            return false;
    }
    return true;
}

WindowModule::WindowModule(AmbientPtr amb) : amb_(std::move(amb)), hf_(amb_->p(), amb_->N()) {}

bool WindowModule::add(const Vec& g, Clip clip) {
    SparseRow r;
    if (!amb_->embed(g, amb_->N(), 0, r)) {
        if (clip == Clip::Error) fail(ErrorKind::Window, "window-too-small: generator leaves the window");
        return false;
    }
    hf_.insert(std::move(r));
    return true;
}

WindowModule WindowModule::span(AmbientPtr amb, const std::vector<Vec>& gens, Clip clip) {
    WindowModule m(std::move(amb));
    for (const auto& g : gens) m.add(g, clip);
    return m;
}

WindowModule WindowModule::full(AmbientPtr amb) {
    WindowModule m(amb);
    for (int c = 0; c < amb->dim(); ++c) m.hf_.insert({{c, ipow(amb->p(), amb->N() - amb->col_exp(c))}});
    return m;
}

bool WindowModule::contains(const Vec& v) const {
    SparseRow r;
    if (!amb_->embed(v, amb_->N(), 0, r)) return false;
    return hf_.contains(r);
}

std::vector<Vec> WindowModule::generators() const {
    std::vector<Vec> out;
    for (const auto& [c, row] : hf_.rows()) {
        (void)c;
        out.push_back(amb_->unembed(row, amb_->N(), 0));
    }
    return out;
}

namespace {

void check_ambient(const WindowModule& a, const WindowModule& b) {
    if (!a.ambient()->same_as(*b.ambient())) fail(ErrorKind::Context, "modules live in different ambients");
}

}  // namespace

bool WindowModule::subset_of(const WindowModule& o) const {
    check_ambient(*this, o);
    for (const auto& [c, row] : hf_.rows()) {
        (void)c;
        if (!o.hf_.contains(row)) return false;
    }
    return true;
}

WindowModule WindowModule::sum(const WindowModule& o) const {
    check_ambient(*this, o);
    WindowModule m = *this;
    for (const auto& [c, row] : o.hf_.rows()) {
        (void)c;
        m.hf_.insert(row);
    }
    return m;
}

WindowModule WindowModule::intersect(const WindowModule& o) const {
    check_ambient(*this, o);
    const int d = amb_->dim();
    HowellForm big(amb_->p(), amb_->N());
    for (const auto& [c, row] : hf_.rows()) {
        (void)c;
        SparseRow r = row;
        for (const auto& [cc, x] : row) r.emplace_back(cc + d, x);
        big.insert(r);
    }
    for (const auto& [c, row] : o.hf_.rows()) {
        (void)c;
        big.insert(row);
    }
    WindowModule m(amb_);
    for (const auto& [c, row] : big.rows()) {
        if (c < d) continue;
        SparseRow r;
        for (const auto& [cc, x] : row) r.emplace_back(cc - d, x);
        m.hf_.insert(r);
    }
    return m;
}

int64_t WindowModule::quotient_length(const WindowModule& sub) const {
    if (!sub.subset_of(*this)) fail(ErrorKind::Context, "quotient by a module that is not a submodule");
    return length() - sub.length();
}

WindowModule image(const WindowModule& M, AmbientPtr target, const LinearMap& phi, Clip clip) {
    WindowModule out(target);
    for (const auto& g : M.generators()) out.add(phi(g), clip);
    return out;
}

WindowModule preimage(const WindowModule& M, const WindowModule& T, const LinearMap& phi) {
    const auto& A = *M.ambient();
    const auto& B = *T.ambient();
    const int K = std::max(A.N(), B.N());
    const int dB = B.dim();
    HowellForm big(A.p(), K);
    const int64_t lift_B = ipow(A.p(), K - B.N());
    const int64_t lift_A = ipow(A.p(), K - A.N());
    for (const auto& [c, row] : M.howell().rows()) {
        (void)c;
        Vec g = A.unembed(row, A.N(), 0);
        SparseRow r;
        if (!B.embed(phi(g), K, 0, r)) fail(ErrorKind::Window, "window-too-small: image leaves the target window");
        for (const auto& [cc, x] : row) r.emplace_back(cc + dB, x * lift_A);
        big.insert(r);
    }
    for (const auto& [c, row] : T.howell().rows()) {
        (void)c;
        SparseRow r;
        for (const auto& [cc, x] : row) r.emplace_back(cc, x * lift_B);
        big.insert(r);
    }
    WindowModule out(M.ambient());
    for (const auto& [c, row] : big.rows()) {
        if (c < dB) continue;
        Vec v = A.unembed(row, K, dB);
        out.add(v, Clip::Error);
    }
    return out;
}

WindowModule kernel(const WindowModule& M, AmbientPtr target, const LinearMap& phi) {
    return preimage(M, WindowModule::zero(std::move(target)), phi);
}

std::vector<Vec> as_vecs(const std::vector<Form>& forms) {
    std::vector<Vec> out;
    out.reserve(forms.size());
    for (const auto& f : forms) out.push_back(Vec{f});
    return out;
}

DenseMatrix DenseMatrix::identity(int k) {
    DenseMatrix m(k, k);
    for (int i = 0; i < k; ++i) m.at(i, i) = 1;
    return m;
}

DenseMatrix mat_mul(const DenseMatrix& x, const DenseMatrix& y, int64_t modulus) {
    DenseMatrix out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            int64_t a = x.at(i, k);
            if (!a) continue;
            for (int j = 0; j < y.cols; ++j) out.at(i, j) = mod(out.at(i, j) + mulmod(a, y.at(k, j), modulus), modulus);
        }
    return out;
}

DenseMatrix embed_row_moduli(const DenseMatrix& m, int p, int N, const std::vector<int>& row_exp) {
    DenseMatrix out = m;
    const int64_t P = ipow(p, N);
    for (int i = 0; i < m.rows; ++i) {
        int64_t f = ipow(p, N - row_exp[i]);
        for (int j = 0; j < m.cols; ++j) out.at(i, j) = mulmod(mod(m.at(i, j), ipow(p, row_exp[i])), f, P);
    }
    return out;
}

SNFResult snf(const DenseMatrix& m, int p, int N) {
    const int64_t P = ipow(p, N);
    DenseMatrix D = m, U = DenseMatrix::identity(m.rows), W = DenseMatrix::identity(m.cols);
    for (auto& x : D.a) x = mod(x, P);
    auto row_op = [&](DenseMatrix& X, int dst, int src, int64_t f) {  // row dst -= f * row src
        for (int j = 0; j < X.cols; ++j) X.at(dst, j) = mod(X.at(dst, j) - mulmod(f, X.at(src, j), P), P);
    };
    auto col_op = [&](DenseMatrix& X, int dst, int src, int64_t f) {
        for (int i = 0; i < X.rows; ++i) X.at(i, dst) = mod(X.at(i, dst) - mulmod(f, X.at(i, src), P), P);
    };
    auto swap_rows = [](DenseMatrix& X, int a, int b) {
        for (int j = 0; j < X.cols; ++j) std::swap(X.at(a, j), X.at(b, j));
    };
    auto swap_cols = [](DenseMatrix& X, int a, int b) {
        for (int i = 0; i < X.rows; ++i) std::swap(X.at(i, a), X.at(i, b));
    };
    SNFResult res;
    const int k = std::min(m.rows, m.cols);
    for (int t = 0; t < k; ++t) {
        int bi = -1, bj = -1, bv = N;
        for (int i = t; i < D.rows && bv > 0; ++i)
            for (int j = t; j < D.cols; ++j) {
                if (!D.at(i, j)) continue;
                int v = vp(D.at(i, j), p);
                if (v < bv) {
                    bv = v;
                    bi = i;
                    bj = j;
                    if (v == 0) break;
                }
            }
        if (bi < 0) break;
        swap_rows(D, t, bi);
        swap_rows(U, t, bi);
        swap_cols(D, t, bj);
        swap_cols(W, t, bj);
        int64_t unit_inv = invmod(D.at(t, t) / ipow(p, bv), P);
        for (int j = 0; j < D.cols; ++j) D.at(t, j) = mulmod(D.at(t, j), unit_inv, P);
        for (int j = 0; j < U.cols; ++j) U.at(t, j) = mulmod(U.at(t, j), unit_inv, P);
        const int64_t piv = ipow(p, bv);
        for (int i = t + 1; i < D.rows; ++i)
            if (D.at(i, t)) {
                int64_t f = D.at(i, t) / piv;
                row_op(D, i, t, f);
                row_op(U, i, t, f);
            }
        for (int j = t + 1; j < D.cols; ++j)
            if (D.at(t, j)) {
                int64_t f = D.at(t, j) / piv;
                col_op(D, j, t, f);
                col_op(W, j, t, f);
            }
        res.divisors.push_back(piv);
    }
    res.left = U;
    res.right = W;
    res.diag = D;
    return res;
}

}  // namespace drw
