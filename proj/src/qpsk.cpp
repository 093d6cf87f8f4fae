#include "rislink/qpsk.hpp"

#include <cmath>
#include <stdexcept>

namespace rislink {

namespace {

constexpr double kInvSqrt2 = 0.7071067811865475244008443621048490;

cplx map_pair(std::uint8_t first, std::uint8_t second) {
    // First bit selects the imaginary sign, second bit the real sign.
    const double re = (second == 0) ? kInvSqrt2 : -kInvSqrt2;
    const double im = (first == 0) ? kInvSqrt2 : -kInvSqrt2;
    return {re, im};
}

}  // namespace

std::vector<cplx> modulate_qpsk(std::span<const std::uint8_t> bits) {
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("modulate_qpsk: bit vector length must be even, got " +
                                    std::to_string(bits.size()));
    std::vector<cplx> symbols(bits.size() / 2);
    for (std::size_t k = 0; k < symbols.size(); ++k)
        symbols[k] = map_pair(bits[2 * k] & 1, bits[2 * k + 1] & 1);
    return symbols;
}

std::vector<std::uint8_t> demodulate_qpsk(std::span<const cplx> symbols) {
    std::vector<std::uint8_t> bits(2 * symbols.size());
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        // Exact zeros resolve to bit 0 by the (v < 0) comparisons.
        bits[2 * k] = symbols[k].imag() < 0.0 ? 1 : 0;
        bits[2 * k + 1] = symbols[k].real() < 0.0 ? 1 : 0;
    }
    return bits;
}

std::size_t quadrant_of(cplx ideal) {
    const bool re_neg = ideal.real() < 0.0;
    const bool im_neg = ideal.imag() < 0.0;
    if (!re_neg && !im_neg) return 0;  // 00
    if (re_neg && !im_neg) return 1;   // 01
    if (re_neg && im_neg) return 2;    // 11
    return 3;                          // 10
}

std::vector<std::uint8_t> pilot_bits(std::size_t n_pilots) {
    // Fixed pseudo-random pattern; both ends of the link know it.
    Rng rng(0x5152534bULL);
    std::vector<std::uint8_t> bits(2 * n_pilots);
    for (auto& b : bits) b = rng.flip() ? 1 : 0;
    return bits;
}

Frame make_frame(std::size_t n_pilots, std::vector<std::uint8_t> data_bits) {
    Frame f;
    f.pilot_symbols = modulate_qpsk(pilot_bits(n_pilots));
    f.data_symbols = modulate_qpsk(data_bits);
    f.data_bits = std::move(data_bits);
    return f;
}

Frame random_frame(std::size_t n_pilots, std::size_t n_data_symbols, Rng& rng) {
    std::vector<std::uint8_t> bits(2 * n_data_symbols);
    for (auto& b : bits) b = rng.flip() ? 1 : 0;
    return make_frame(n_pilots, std::move(bits));
}

std::vector<cplx> receive_frame(const Frame& frame, cplx h, cplx h_e, double jam_power,
                                double noise_power, Rng& rng) {
    if (jam_power < 0.0) throw std::invalid_argument("receive_frame: jam_power must be >= 0");
    if (noise_power < 0.0) throw std::invalid_argument("receive_frame: noise_power must be >= 0");
    const double jam_amp = std::sqrt(jam_power);
    const double noise_amp = std::sqrt(noise_power);
    std::vector<cplx> y;
    y.reserve(frame.n_symbols());
    auto push = [&](cplx s) {
        const cplx w = rng.unit_complex_gaussian();
        const cplx n = rng.unit_complex_gaussian();
        y.push_back(h * s + h_e * (jam_amp * w) + noise_amp * n);
    };
    for (cplx s : frame.pilot_symbols) push(s);
    for (cplx s : frame.data_symbols) push(s);
    return y;
}

std::vector<cplx> receive_frame(const Frame& frame, cplx h, cplx h_e, double jam_power,
                                double noise_power, std::uint64_t seed) {
    Rng rng(seed);
    return receive_frame(frame, h, h_e, jam_power, noise_power, rng);
}

cplx equalize(std::span<const cplx> received_pilots, std::span<const cplx> known_pilots) {
    if (received_pilots.empty() || received_pilots.size() != known_pilots.size())
        throw std::invalid_argument("equalize: pilot vectors must be nonempty and equal length");
    cplx num{0.0, 0.0};
    double den = 0.0;
    for (std::size_t p = 0; p < known_pilots.size(); ++p) {
        num += received_pilots[p] * std::conj(known_pilots[p]);
        den += std::norm(known_pilots[p]);
    }
    return num / den;
}

double per_symbol_evm(cplx received, cplx ideal) {
    const double ref = std::abs(ideal);
    if (ref == 0.0) throw std::invalid_argument("per_symbol_evm: ideal symbol must be nonzero");
    return std::abs(received - ideal) / ref;
}

double mean_evm(std::span<const double> per_symbol) {
    if (per_symbol.empty()) throw std::invalid_argument("mean_evm: empty per-symbol vector");
    double acc = 0.0;
    for (double s : per_symbol) acc += s * s;
    return std::sqrt(acc / static_cast<double>(per_symbol.size()));
}

namespace {

EvmReport measure_equalized(const Frame& frame, std::span<const cplx> received, cplx h_hat,
                            bool equalized) {
    if (received.size() != frame.n_symbols())
        throw std::invalid_argument("measure_frame: received length does not match frame");
    EvmReport report;
    report.equalized = equalized;
    report.per_symbol.resize(frame.n_data());
    std::array<cplx, 4> sums{};
    for (std::size_t k = 0; k < frame.n_data(); ++k) {
        const cplx ideal = frame.data_symbols[k];
        const std::size_t q = quadrant_of(ideal);
        if (!equalized) {
            report.per_symbol[k] = 1.0;
            sums[q] += cplx{0.0, 0.0};
        } else {
            const cplx eq = received[frame.n_pilots() + k] / h_hat;
            report.per_symbol[k] = per_symbol_evm(eq, ideal);
            sums[q] += eq;
        }
        report.quadrant_counts[q] += 1;
    }
    for (std::size_t q = 0; q < 4; ++q)
        report.quadrant_barycenters[q] =
            report.quadrant_counts[q] ? sums[q] / static_cast<double>(report.quadrant_counts[q])
                                      : cplx{0.0, 0.0};
    report.mean = mean_evm(report.per_symbol);
    return report;
}

}  // namespace

EvmReport measure_frame(const Frame& frame, std::span<const cplx> received) {
    if (received.size() != frame.n_symbols())
        throw std::invalid_argument("measure_frame: received length does not match frame");
    const cplx h_hat =
        equalize(received.subspan(0, frame.n_pilots()), frame.pilot_symbols);
    const bool ok = h_hat != cplx{0.0, 0.0};
    return measure_equalized(frame, received, ok ? h_hat : cplx{1.0, 0.0}, ok);
}

EvmReport measure_frame_known_channel(const Frame& frame, std::span<const cplx> received,
                                      cplx h) {
    const bool ok = h != cplx{0.0, 0.0};
    return measure_equalized(frame, received, ok ? h : cplx{1.0, 0.0}, ok);
}

double sinr_db(cplx h, cplx h_e, double signal_power, double jam_power, double noise_power) {
    if (signal_power < 0.0 || jam_power < 0.0 || noise_power < 0.0)
        throw std::invalid_argument("sinr_db: powers must be >= 0");
    const double denom = std::norm(h_e) * jam_power + noise_power;
    if (denom == 0.0) throw std::invalid_argument("sinr_db: interference-plus-noise power is zero");
    return 10.0 * std::log10(std::norm(h) * signal_power / denom);
}

}  // namespace rislink
