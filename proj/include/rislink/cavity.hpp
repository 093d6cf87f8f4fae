#pragma once

#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "rislink/rng.hpp"

namespace rislink {

/// Reflection state of one effective pixel: phase 0 (multiplicative factor
/// +1) or phase pi (factor -1). Toggling twice restores the original state.
enum class PixelState : std::uint8_t { Zero = 0, Pi = 1 };

constexpr PixelState toggled(PixelState s) {
    return s == PixelState::Zero ? PixelState::Pi : PixelState::Zero;
}

constexpr double pixel_sign(PixelState s) {
    return s == PixelState::Zero ? 1.0 : -1.0;
}

/// Ordered binary state vector of all effective pixels across one or more
/// surfaces. Pixels carry a global index 0..total-1; the global index maps
/// bijectively to (surface, local index) in surface order.
class RisConfiguration {
  public:
    RisConfiguration(std::vector<std::size_t> surface_sizes, std::vector<PixelState> states);

    /// All pixels at phase 0.
    static RisConfiguration zeros(const std::vector<std::size_t>& surface_sizes);
    /// Uniformly random pixel states.
    static RisConfiguration random(const std::vector<std::size_t>& surface_sizes, std::uint64_t seed);

    std::size_t total_pixels() const { return states_.size(); }
    std::size_t surface_count() const { return surface_sizes_.size(); }
    std::size_t surface_size(std::size_t surface) const;

    PixelState state(std::size_t global_index) const;
    /// +1 for phase 0, -1 for phase pi.
    double sign(std::size_t global_index) const { return pixel_sign(state(global_index)); }

    /// Copy of this configuration with exactly pixel `global_index` toggled.
    RisConfiguration flipped(std::size_t global_index) const;

    std::pair<std::size_t, std::size_t> locate(std::size_t global_index) const;
    std::size_t global_index(std::size_t surface, std::size_t local_index) const;

    const std::vector<PixelState>& states() const { return states_; }
    const std::vector<std::size_t>& surface_sizes() const { return surface_sizes_; }

    bool operator==(const RisConfiguration&) const = default;

  private:
    std::vector<std::size_t> surface_sizes_;
    std::vector<PixelState> states_;
};

/// Returns a configuration differing from `cfg` in exactly pixel `i`.
RisConfiguration flip_pixel(const RisConfiguration& cfg, std::size_t i);

/// Statistical parameters of the cavity stand-in. kappa is the power of
/// multipath that never intercepts a surface, relative to the unit mean
/// power of the pixel-routed paths; eve_kappa is the same for the
/// interferer's link.
struct CavityParameters {
    std::size_t n_pixels_per_surface = 152;
    std::size_t n_surfaces = 2;
    double kappa = 0.25;
    double eve_kappa = 0.25;
    std::uint64_t seed = 0;

    std::size_t total_pixels() const { return n_pixels_per_surface * n_surfaces; }
    std::vector<std::size_t> surface_sizes() const;
    /// Throws std::invalid_argument on zero pixel counts or negative power
    /// fractions.
    void validate() const;
};

/// One frozen random draw of every coupling coefficient defining the
/// transmitter->receiver and interferer->receiver channels. Immutable after
/// creation; all channel evaluations are pure functions of it.
///
/// The channel is a single-bounce cascade: each pixel n contributes
/// a_n * b_n (transmitter->pixel times pixel->receiver) to the main link and
/// e_n * b_n to the interferer link, multiplied by the pixel's +-1 state.
/// Both links share the pixel->receiver couplings b_n. The scalars d_ab and
/// d_eb carry the multipath that bypasses every surface.
class CavityRealization {
  public:
    CavityRealization(std::vector<std::complex<double>> alice,
                      std::vector<std::complex<double>> bob,
                      std::vector<std::complex<double>> eve,
                      std::complex<double> direct_alice_bob,
                      std::complex<double> direct_eve_bob,
                      CavityParameters params);

    const std::vector<std::complex<double>>& alice_coupling() const { return a_; }
    const std::vector<std::complex<double>>& bob_coupling() const { return b_; }
    const std::vector<std::complex<double>>& eve_coupling() const { return e_; }
    std::complex<double> direct_alice_bob() const { return d_ab_; }
    std::complex<double> direct_eve_bob() const { return d_eb_; }
    const CavityParameters& params() const { return params_; }
    std::size_t total_pixels() const { return a_.size(); }

    std::vector<std::size_t> surface_sizes() const { return params_.surface_sizes(); }

  private:
    std::vector<std::complex<double>> a_;
    std::vector<std::complex<double>> b_;
    std::vector<std::complex<double>> e_;
    std::complex<double> d_ab_;
    std::complex<double> d_eb_;
    CavityParameters params_;
};

/// Draws a realization from the cavity statistics. Couplings are i.i.d.
/// circularly-symmetric complex Gaussian with per-pixel path power
/// E[|a_n b_n|^2] = E[|e_n b_n|^2] = 1/N, so a random configuration yields
/// unit mean channel power on both links. Fully determined by params.seed.
CavityRealization sample_realization(const CavityParameters& params);

/// Effective complex baseband channel transmitter->receiver:
/// h = d_ab + sum_n a_n b_n c_n with c_n = +-1 per pixel state.
std::complex<double> effective_channel(const CavityRealization& real, const RisConfiguration& cfg);

/// Effective interferer->receiver channel: h_e = d_eb + sum_n e_n b_n c_n.
std::complex<double> effective_jammer_channel(const CavityRealization& real,
                                              const RisConfiguration& cfg);

}  // namespace rislink
