#pragma once
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "drw_forms.hpp"

namespace drw {

// Sparse vector over Z/p^N, entries sorted by column.
using SparseRow = std::vector<std::pair<int, int64_t>>;

// Echelon form over the chain ring Z/p^N: one pivot row per column, each pivot entry an exact power of p,
// closed under the annihilator multiples so that leading-column reduction decides membership.
class HowellForm {
public:
    HowellForm(int p, int N);
    void insert(SparseRow r);
    SparseRow reduce(SparseRow r) const;
    bool contains(const SparseRow& r) const { return reduce(r).empty(); }
    int64_t length() const;
    int p() const { return p_; }
    int N() const { return N_; }
    const std::map<int, SparseRow>& rows() const { return piv_; }

private:
    void normalize(SparseRow& r) const;
    void axpy(SparseRow& x, int64_t f, const SparseRow& y) const;
    void scale(SparseRow& x, int64_t f) const;
    int p_, N_;
    int64_t P_;
    std::map<int, SparseRow> piv_;
};

struct BlockSpec {
    int level = 1;
    int q = 0;
    Window window;
};

using Vec = std::vector<Form>;

class Ambient {
public:
    Ambient(int p, std::vector<BlockSpec> blocks);
    static std::shared_ptr<const Ambient> make(int p, std::vector<BlockSpec> blocks);
    static std::shared_ptr<const Ambient> single(int p, int level, int q, const Window& w);

    int p() const { return p_; }
    int N() const { return N_; }
    int dim() const { return static_cast<int>(cols_.size()); }
    const std::vector<BlockSpec>& blocks() const { return blocks_; }
    int col(int block, const Key& k) const;
    // modulus exponent of a column, at most N
    int col_exp(int c) const { return exps_[c]; }
    int col_block(int c) const { return cols_[c].first; }
    const Key& col_key(int c) const { return cols_[c].second; }
    int64_t full_length() const;
    Vec zero_vec() const;
    bool has_block_key(int block, const Key& k) const { return col(block, k) >= 0; }

    // coordinates scaled into Z/p^M; false when a nonzero coefficient falls outside the windows
    bool embed(const Vec& v, int M, int offset, SparseRow& out) const;
    Vec unembed(const SparseRow& r, int M, int offset) const;
    bool same_as(const Ambient& o) const;

private:
    int p_;
    int N_ = 0;
    std::vector<BlockSpec> blocks_;
    std::vector<std::map<Key, int>> index_;
    std::vector<std::pair<int, Key>> cols_;
    std::vector<int> exps_;
};

using AmbientPtr = std::shared_ptr<const Ambient>;
using LinearMap = std::function<Vec(const Vec&)>;

enum class Clip { Drop, Error };

class WindowModule {
public:
    explicit WindowModule(AmbientPtr amb);
    static WindowModule span(AmbientPtr amb, const std::vector<Vec>& gens, Clip clip = Clip::Drop);
    static WindowModule full(AmbientPtr amb);
    static WindowModule zero(AmbientPtr amb) { return WindowModule(std::move(amb)); }

    const AmbientPtr& ambient() const { return amb_; }
    bool add(const Vec& g, Clip clip = Clip::Drop);
    bool contains(const Vec& v) const;
    int64_t length() const { return hf_.length(); }
    std::vector<Vec> generators() const;
    const HowellForm& howell() const { return hf_; }

    bool subset_of(const WindowModule& o) const;
    bool equals(const WindowModule& o) const { return subset_of(o) && o.subset_of(*this); }
    WindowModule sum(const WindowModule& o) const;
    WindowModule intersect(const WindowModule& o) const;
    // length(this / sub), requires sub inside this
    int64_t quotient_length(const WindowModule& sub) const;

private:
    AmbientPtr amb_;
    HowellForm hf_;
};

// phi applied to generators of M; generators mapping outside the target raise a window error
WindowModule image(const WindowModule& M, AmbientPtr target, const LinearMap& phi, Clip clip = Clip::Error);
// {x in M : phi(x) in T}
WindowModule preimage(const WindowModule& M, const WindowModule& T, const LinearMap& phi);
WindowModule kernel(const WindowModule& M, AmbientPtr target, const LinearMap& phi);

// Single-block helpers for modules of forms.
inline Vec vec1(const Form& f) { return Vec{f}; }
std::vector<Vec> as_vecs(const std::vector<Form>& forms);

struct DenseMatrix {
    int rows = 0, cols = 0;
    std::vector<int64_t> a;
    DenseMatrix() = default;
    DenseMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0) {}
    int64_t& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    int64_t at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
    static DenseMatrix identity(int k);
};

DenseMatrix mat_mul(const DenseMatrix& x, const DenseMatrix& y, int64_t modulus);

struct SNFResult {
    std::vector<int64_t> divisors;  // nonzero p-powers, each dividing the next
    DenseMatrix left, right, diag;  // left * m * right == diag
};

SNFResult snf(const DenseMatrix& m, int p, int N);
// rows of modulus p^{row_exp[i]} embedded as p^{N - row_exp[i]}-scaled rows of Z/p^N
DenseMatrix embed_row_moduli(const DenseMatrix& m, int p, int N, const std::vector<int>& row_exp);

}  // namespace drw
