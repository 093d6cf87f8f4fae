#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "rislink/rng.hpp"

namespace rislink {

using cplx = std::complex<double>;

/// Gray-mapped QPSK, one symbol per bit pair:
///   00 -> (+1+j)/sqrt2   01 -> (-1+j)/sqrt2
///   11 -> (-1-j)/sqrt2   10 -> (+1-j)/sqrt2
/// Throws std::invalid_argument on odd-length input.
std::vector<cplx> modulate_qpsk(std::span<const std::uint8_t> bits);

/// Minimum-distance QPSK decision, inverse of the Gray map. Components that
/// are exactly zero resolve to bit 0.
std::vector<std::uint8_t> demodulate_qpsk(std::span<const cplx> symbols);

/// Quadrant class of an ideal symbol, indexed by its bit pair:
/// 0 = 00, 1 = 01, 2 = 11, 3 = 10.
std::size_t quadrant_of(cplx ideal);

/// Pilot + data symbol block with known transmitted bits.
struct Frame {
    std::vector<cplx> pilot_symbols;       // known at both ends, unit modulus
    std::vector<std::uint8_t> data_bits;   // length 2 * data_symbols.size()
    std::vector<cplx> data_symbols;        // modulate_qpsk(data_bits)

    std::size_t n_pilots() const { return pilot_symbols.size(); }
    std::size_t n_data() const { return data_symbols.size(); }
    std::size_t n_symbols() const { return n_pilots() + n_data(); }
};

/// The fixed pilot bit pattern shared by every frame in the artifact.
std::vector<std::uint8_t> pilot_bits(std::size_t n_pilots);

Frame make_frame(std::size_t n_pilots, std::vector<std::uint8_t> data_bits);
Frame random_frame(std::size_t n_pilots, std::size_t n_data_symbols, Rng& rng);

/// Flat-fading reception of a whole frame (pilots followed by data):
///   y_k = h s_k + h_e w_k + n_k
/// with w_k, n_k circularly-symmetric complex Gaussian of variance jam_power
/// and noise_power. The jam and noise streams are drawn as unit-variance
/// variates scaled by sqrt(power), so the same rng seed produces the same
/// underlying realization at every power setting.
std::vector<cplx> receive_frame(const Frame& frame, cplx h, cplx h_e, double jam_power,
                                double noise_power, Rng& rng);
std::vector<cplx> receive_frame(const Frame& frame, cplx h, cplx h_e, double jam_power,
                                double noise_power, std::uint64_t seed);

/// Least-squares scalar channel estimate from pilots:
///   h_hat = sum(y_p conj(s_p)) / sum(|s_p|^2).
/// A result of exactly zero marks an unequalizable frame (degenerate fade);
/// callers treat such a frame as all-error (EVM 1).
cplx equalize(std::span<const cplx> received_pilots, std::span<const cplx> known_pilots);

/// Per-symbol error vector magnitude |s_k - s_I| / |s_I|.
double per_symbol_evm(cplx received, cplx ideal);

/// Root mean square of a per-symbol EVM ensemble.
double mean_evm(std::span<const double> per_symbol);

/// Per-symbol error magnitudes, their RMS, and the mean received symbol per
/// ideal-symbol class.
struct EvmReport {
    std::vector<double> per_symbol;
    double mean = 0.0;
    std::array<cplx, 4> quadrant_barycenters{};
    std::array<std::size_t, 4> quadrant_counts{};
    bool equalized = true;  // false when the pilot estimate degenerated to 0
};

/// Equalizes `received` (pilots + data) against the frame's known pilots and
/// measures data-aided EVM against the known transmitted symbols. If the
/// pilot estimate is exactly zero the report carries EVM 1 for every symbol.
EvmReport measure_frame(const Frame& frame, std::span<const cplx> received);

/// Same measurement with a caller-supplied channel (perfect equalization).
EvmReport measure_frame_known_channel(const Frame& frame, std::span<const cplx> received,
                                      cplx h);

/// 10 log10( |h|^2 S / (|h_e|^2 J + N0) ). Throws when the denominator is 0.
double sinr_db(cplx h, cplx h_e, double signal_power, double jam_power, double noise_power);

}  // namespace rislink
