#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "chain_linalg.hpp"
#include "drw_forms.hpp"

namespace drw {

enum class FilKind { Log, LogPrime, Fil, FilBig, FilP };

const char* kind_name(FilKind k);
FilKind parse_kind(const std::string& s);

struct FiltrationId {
    FilKind kind = FilKind::FilP;
    int64_t r = 0;
    int q = 0;
    PrimeContext ctx;
};

struct Generator {
    Form form;
    std::string recipe;
};

using GeneratorFamily = std::vector<Generator>;

// NF basis keys of the regular (or log-regular) lattice at the given level inside the window
std::vector<Form> regular_basis(int p, int level, int q, const Window& w, bool log_poles = false);
WindowModule regular_space(int p, int level, int q, const Window& w, bool log_poles = false);

// Lowest weight the pole filtration of level r can reach.
WeightQ pole_floor(const FiltrationId& id);

GeneratorFamily generators(const FiltrationId& id, const Window& w);
// same family without the window sanity check; used when a window is deliberately partial
GeneratorFamily generators_unchecked(const FiltrationId& id, const Window& w);
WindowModule window_space(const FiltrationId& id, const Window& w);
WindowModule window_space_unchecked(const FiltrationId& id, const Window& w);
// sum over s of p^s Fil_{r p^s}, built from the Fil layers instead of the explicit presentation
WindowModule filp_by_saturation(const PrimeContext& ctx, int q, int64_t r, const Window& w);

// pole filtration at an arbitrary level: 0 at level 0
WindowModule filp_space(int p, int level, int q, int64_t r, const Window& w);

Window support_window(const Form& x);
int64_t conductor(const Form& x);

}  // namespace drw
