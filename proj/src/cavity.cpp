#include "rislink/cavity.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rislink {

RisConfiguration::RisConfiguration(std::vector<std::size_t> surface_sizes,
                                   std::vector<PixelState> states)
    : surface_sizes_(std::move(surface_sizes)), states_(std::move(states)) {
    std::size_t total = 0;
    for (std::size_t s : surface_sizes_) {
        if (s == 0) throw std::invalid_argument("RisConfiguration: empty surface");
        total += s;
    }
    if (total == 0) throw std::invalid_argument("RisConfiguration: zero pixels");
    if (total != states_.size())
        throw std::invalid_argument("RisConfiguration: state count " +
                                    std::to_string(states_.size()) +
                                    " does not match surface sizes (total " +
                                    std::to_string(total) + ")");
}

RisConfiguration RisConfiguration::zeros(const std::vector<std::size_t>& surface_sizes) {
    std::size_t total = 0;
    for (std::size_t s : surface_sizes) total += s;
    return RisConfiguration(surface_sizes, std::vector<PixelState>(total, PixelState::Zero));
}

RisConfiguration RisConfiguration::random(const std::vector<std::size_t>& surface_sizes,
                                          std::uint64_t seed) {
    std::size_t total = 0;
    for (std::size_t s : surface_sizes) total += s;
    Rng rng(seed);
    std::vector<PixelState> states(total);
    for (auto& st : states) st = rng.flip() ? PixelState::Pi : PixelState::Zero;
    return RisConfiguration(surface_sizes, std::move(states));
}

std::size_t RisConfiguration::surface_size(std::size_t surface) const {
    if (surface >= surface_sizes_.size())
        throw std::out_of_range("RisConfiguration: surface index out of range");
    return surface_sizes_[surface];
}

PixelState RisConfiguration::state(std::size_t global_index) const {
    if (global_index >= states_.size())
        throw std::out_of_range("RisConfiguration: pixel index " +
                                std::to_string(global_index) + " out of range [0, " +
                                std::to_string(states_.size()) + ")");
    return states_[global_index];
}

RisConfiguration RisConfiguration::flipped(std::size_t global_index) const {
    RisConfiguration out = *this;
    out.states_[global_index] = toggled(state(global_index));
    return out;
}

std::pair<std::size_t, std::size_t> RisConfiguration::locate(std::size_t global_index) const {
    if (global_index >= states_.size())
        throw std::out_of_range("RisConfiguration: pixel index out of range");
    std::size_t surface = 0;
    while (global_index >= surface_sizes_[surface]) {
        global_index -= surface_sizes_[surface];
        ++surface;
    }
    return {surface, global_index};
}

std::size_t RisConfiguration::global_index(std::size_t surface, std::size_t local_index) const {
    if (surface >= surface_sizes_.size())
        throw std::out_of_range("RisConfiguration: surface index out of range");
    if (local_index >= surface_sizes_[surface])
        throw std::out_of_range("RisConfiguration: local pixel index out of range");
    std::size_t base = 0;
    for (std::size_t s = 0; s < surface; ++s) base += surface_sizes_[s];
    return base + local_index;
}

RisConfiguration flip_pixel(const RisConfiguration& cfg, std::size_t i) {
    return cfg.flipped(i);
}

std::vector<std::size_t> CavityParameters::surface_sizes() const {
    return std::vector<std::size_t>(n_surfaces, n_pixels_per_surface);
}

void CavityParameters::validate() const {
    if (n_pixels_per_surface == 0)
        throw std::invalid_argument("CavityParameters: n_pixels_per_surface must be positive");
    if (n_surfaces == 0)
        throw std::invalid_argument("CavityParameters: n_surfaces must be positive");
    if (!(kappa >= 0.0))
        throw std::invalid_argument("CavityParameters: kappa must be >= 0");
    if (!(eve_kappa >= 0.0))
        throw std::invalid_argument("CavityParameters: eve_kappa must be >= 0");
}

CavityRealization::CavityRealization(std::vector<std::complex<double>> alice,
                                     std::vector<std::complex<double>> bob,
                                     std::vector<std::complex<double>> eve,
                                     std::complex<double> direct_alice_bob,
                                     std::complex<double> direct_eve_bob,
                                     CavityParameters params)
    : a_(std::move(alice)),
      b_(std::move(bob)),
      e_(std::move(eve)),
      d_ab_(direct_alice_bob),
      d_eb_(direct_eve_bob),
      params_(std::move(params)) {
    if (a_.size() != b_.size() || a_.size() != e_.size())
        throw std::invalid_argument("CavityRealization: coupling vectors differ in length");
    if (a_.size() != params_.total_pixels())
        throw std::invalid_argument("CavityRealization: coupling length does not match params");
}

CavityRealization sample_realization(const CavityParameters& params) {
    params.validate();
    const std::size_t n = params.total_pixels();
    // Per-coupling variance 1/sqrt(N) so the per-pixel cascade power
    // E[|a_n|^2] E[|b_n|^2] is exactly 1/N.
    const double coupling_var = 1.0 / std::sqrt(static_cast<double>(n));

    Rng rng(params.seed);
    std::vector<std::complex<double>> a(n), b(n), e(n);
    for (auto& v : a) v = rng.complex_gaussian(coupling_var);
    for (auto& v : b) v = rng.complex_gaussian(coupling_var);
    for (auto& v : e) v = rng.complex_gaussian(coupling_var);
    const std::complex<double> d_ab = rng.complex_gaussian(params.kappa);
    const std::complex<double> d_eb = rng.complex_gaussian(params.eve_kappa);
    return CavityRealization(std::move(a), std::move(b), std::move(e), d_ab, d_eb, params);
}

namespace {

std::complex<double> cascade_sum(const std::vector<std::complex<double>>& tx,
                                 const std::vector<std::complex<double>>& rx,
                                 const RisConfiguration& cfg,
                                 std::complex<double> direct) {
    if (cfg.total_pixels() != tx.size())
        throw std::invalid_argument("effective channel: configuration has " +
                                    std::to_string(cfg.total_pixels()) +
                                    " pixels, realization has " + std::to_string(tx.size()));
    std::complex<double> acc = direct;
    for (std::size_t i = 0; i < tx.size(); ++i) acc += tx[i] * rx[i] * cfg.sign(i);
    return acc;
}

}  // namespace

std::complex<double> effective_channel(const CavityRealization& real,
                                       const RisConfiguration& cfg) {
    return cascade_sum(real.alice_coupling(), real.bob_coupling(), cfg, real.direct_alice_bob());
}

std::complex<double> effective_jammer_channel(const CavityRealization& real,
                                              const RisConfiguration& cfg) {
    return cascade_sum(real.eve_coupling(), real.bob_coupling(), cfg, real.direct_eve_bob());
}

}  // namespace rislink
