#include "zbw/wavepacket.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "zbw/errors.hpp"
#include "zbw/fitting.hpp"

namespace zbw {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Deterministic pairwise reduction; bit-stable across runs and more
// accurate than a running sum at these lengths.
real pairwise_sum(const std::vector<real>& xs, size_t lo, size_t hi) {
    if (hi - lo <= 4) {
        real s = 0;
        for (size_t i = lo; i < hi; ++i) s += xs[i];
        return s;
    }
    const size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(xs, lo, mid) + pairwise_sum(xs, mid, hi);
}

real pairwise_sum(const std::vector<real>& xs) { return pairwise_sum(xs, 0, xs.size()); }

// Cached FFTW long-double plans, one pair per transform length, executed
// through internal buffers under a lock.
class FftEngine {
  public:
    static FftEngine& instance() {
        static FftEngine engine;
        return engine;
    }

    // out = i * d/dp of the length-n sequence sampled with spacing dp.
    void spectral_derivative_times_i(const std::vector<cplx>& in, std::vector<cplx>& out,
                                     real dp) {
        const int n = static_cast<int>(in.size());
        std::lock_guard<std::mutex> hold(mutex_);
        Plans& plans = plans_for(n);
        for (int i = 0; i < n; ++i) plans.buffer[i] = in[i];
        fftwl_execute(plans.forward);
        const real length = dp * n;
        for (int q = 0; q < n; ++q) {
            // signed frequency index; the Nyquist bin is zeroed
            int qs = (q <= n / 2) ? q : q - n;
            if (q == n / 2) qs = 0;
            // i * (2 pi i qs / L) = -2 pi qs / L
            plans.spectrum[q] *= cplx(-2 * kPi * qs / length / n);
        }
        fftwl_execute(plans.backward);
        out.resize(n);
        for (int i = 0; i < n; ++i) out[i] = plans.buffer[i];
    }

  private:
    struct Plans {
        std::vector<cplx> buffer;
        std::vector<cplx> spectrum;
        fftwl_plan forward = nullptr;
        fftwl_plan backward = nullptr;
    };

    Plans& plans_for(int n) {
        auto it = cache_.find(n);
        if (it != cache_.end()) return it->second;
        Plans plans;
        plans.buffer.resize(n);
        plans.spectrum.resize(n);
        auto* buf = reinterpret_cast<fftwl_complex*>(plans.buffer.data());
        auto* spec = reinterpret_cast<fftwl_complex*>(plans.spectrum.data());
        plans.forward = fftwl_plan_dft_1d(n, buf, spec, FFTW_FORWARD, FFTW_ESTIMATE);
        plans.backward = fftwl_plan_dft_1d(n, spec, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        return cache_.emplace(n, std::move(plans)).first->second;
    }

    std::mutex mutex_;
    std::map<int, Plans> cache_;
};

ModeOperators build_mode(RepresentationKind kind, real mass, std::optional<real> n_parameter,
                         int axis, real p) {
    std::array<real, 3> momentum{0, 0, 0};
    momentum[axis] = p;
    switch (kind) {
        case RepresentationKind::Dirac: return build_dirac(mass, momentum);
        case RepresentationKind::GFV:
            if (!n_parameter) throw ParameterError("wave packet: GFV requires the N parameter");
            return build_gfv(mass, momentum, *n_parameter);
        case RepresentationKind::SakataTaketani: return build_st(mass, momentum);
    }
    throw ParameterError("wave packet: unknown representation");
}

real metric_inner_real(const ModeOperators& mode, const std::vector<cplx>& a,
                       const std::vector<cplx>& b, bool euclidean) {
    const int n = mode.dim();
    cplx acc(0);
    for (int i = 0; i < n; ++i) {
        const real sign =
            (euclidean || mode.kind == RepresentationKind::Dirac || i < n / 2) ? 1 : -1;
        acc += sign * std::conj(a[i]) * b[i];
    }
    return acc.real();
}

// Continue a sector eigenvector to the neighbouring grid mode by
// projecting with Lambda_sector and renormalizing under the charge form;
// this keeps the spinor field smooth in p, which the spectral derivative
// requires.
std::vector<cplx> continue_state(const ModeOperators& mode, int sector,
                                 const std::vector<cplx>& previous) {
    const EnergyProjectors proj = energy_projectors_algebraic(mode);
    const ComplexMatrix& p = (sector > 0) ? proj.lambda_plus : proj.lambda_minus;
    std::vector<cplx> v = p * previous;
    const real sign = (mode.kind == RepresentationKind::Dirac) ? real(1) : real(sector);
    const real norm = sign * metric_inner_real(mode, v, v, false);
    if (!(norm > real(0))) {
        throw IllConditionedError("wave packet: sector continuation lost the eigenvector");
    }
    const real inv = 1 / std::sqrt(norm);
    for (auto& x : v) x *= inv;
    return v;
}

}  // namespace

WavePacket gaussian_packet(RepresentationKind kind, real mass, std::optional<real> n_parameter,
                           int axis, real p0, real sigma_p, int n_points, real dp,
                           Composition composition, real weight_plus) {
    if (axis < 0 || axis > 2) throw ParameterError("gaussian_packet: axis must be 0..2");
    if (!(sigma_p > real(0))) throw ParameterError("gaussian_packet: sigma_p must be positive");
    if (!is_power_of_two(n_points) || n_points < 8) {
        throw ParameterError("gaussian_packet: n_points must be a power of two >= 8");
    }
    if (dp <= real(0)) dp = 24 * sigma_p / n_points;  // span p0 +- 12 sigma
    switch (composition) {
        case Composition::PositiveOnly: weight_plus = 1; break;
        case Composition::NegativeOnly: weight_plus = 0; break;
        case Composition::Mixed:
            if (weight_plus < real(0) || weight_plus > real(1)) {
                throw ParameterError("gaussian_packet: mixed weight must lie in [0, 1]");
            }
            break;
    }

    WavePacket packet;
    packet.kind = kind;
    packet.mass = mass;
    packet.gfv_parameter = n_parameter;
    packet.composition = composition;
    packet.weight_plus = weight_plus;
    packet.grid.axis = axis;
    packet.grid.p0 = p0;
    packet.grid.dp = dp;
    packet.grid.n_points = n_points;
    packet.grid.p_values.resize(n_points);
    for (int j = 0; j < n_points; ++j) {
        packet.grid.p_values[j] = p0 + (real(j) - real(n_points) / 2 + real(0.5L)) * dp;
    }

    // Envelope, with the edge check that keeps the periodic FFT honest.
    std::vector<real> envelope(n_points);
    const real amp = std::pow(2 * kPi * sigma_p * sigma_p, real(-0.25L));
    for (int j = 0; j < n_points; ++j) {
        const real d = packet.grid.p_values[j] - p0;
        envelope[j] = amp * std::exp(-d * d / (4 * sigma_p * sigma_p));
    }
    const real edge = std::max(envelope.front(), envelope.back());
    if (edge > real(1e-10) * amp) {
        throw ParameterError(
            "gaussian_packet: envelope exceeds 1e-10 at the grid edge; widen the grid");
    }
    std::vector<real> weights(n_points);
    for (int j = 0; j < n_points; ++j) weights[j] = envelope[j] * envelope[j];
    const real total = pairwise_sum(weights) * dp;
    const real rescale = 1 / std::sqrt(total);
    for (auto& e : envelope) e *= rescale;

    const bool need_plus = weight_plus > real(0);
    const bool need_minus = weight_plus < real(1);

    // Seed the sector chains at the grid center, then continue outward.
    const int center = n_points / 2;
    std::vector<std::vector<cplx>> plus_chain(n_points), minus_chain(n_points);
    const ModeOperators center_mode =
        build_mode(kind, mass, n_parameter, axis, packet.grid.p_values[center]);
    std::vector<cplx> plus_seed, minus_seed;
    if (need_plus) plus_seed = sector_basis(center_mode, +1).front().components;
    if (need_minus) {
        if (!need_plus) {
            minus_seed = sector_basis(center_mode, -1).front().components;
        } else {
            // Mixed packets pair u+ with the negative-sector state that
            // actually trembles along the packet axis.
            minus_seed =
                trembling_partner(center_mode, make_state(kind, plus_seed), axis).components;
        }
    }

    auto fill_chain = [&](std::vector<std::vector<cplx>>& chain, int sector,
                          const std::vector<cplx>& seed) {
        chain[center] = seed;
        for (int j = center + 1; j < n_points; ++j) {
            chain[j] = continue_state(
                build_mode(kind, mass, n_parameter, axis, packet.grid.p_values[j]), sector,
                chain[j - 1]);
        }
        for (int j = center - 1; j >= 0; --j) {
            chain[j] = continue_state(
                build_mode(kind, mass, n_parameter, axis, packet.grid.p_values[j]), sector,
                chain[j + 1]);
        }
    };
    if (need_plus) fill_chain(plus_chain, +1, plus_seed);
    if (need_minus) fill_chain(minus_chain, -1, minus_seed);

    const real wp = std::sqrt(weight_plus);
    const real wm = std::sqrt(1 - weight_plus);
    const int dim = dimension_of(kind);
    packet.amplitudes.reserve(n_points);
    for (int j = 0; j < n_points; ++j) {
        std::vector<cplx> components(dim);
        for (int i = 0; i < dim; ++i) {
            cplx value(0);
            if (need_plus) value += wp * plus_chain[j][i];
            if (need_minus) value += wm * minus_chain[j][i];
            components[i] = envelope[j] * value;
        }
        packet.amplitudes.push_back(make_state(kind, std::move(components)));
    }
    return packet;
}

ModeOperators packet_mode(const WavePacket& packet, int k) {
    return build_mode(packet.kind, packet.mass, packet.gfv_parameter, packet.grid.axis,
                      packet.grid.p_values[k]);
}

WavePacket gfv_rebase_packet(const WavePacket& packet, real n_to) {
    if (packet.kind != RepresentationKind::GFV || !packet.gfv_parameter) {
        throw ParameterError("gfv_rebase_packet: packet is not in a GFV representation");
    }
    WavePacket out = packet;
    out.gfv_parameter = n_to;
    for (auto& state : out.amplitudes) state = gfv_rebase(state, *packet.gfv_parameter, n_to);
    return out;
}

WavePacket evolve_packet(const WavePacket& packet, real t) {
    WavePacket out = packet;
    for (int k = 0; k < packet.grid.n_points; ++k) {
        const ModeOperators mode = packet_mode(packet, k);
        // exp(-iHt) = cos(Et) I - i sin(Et) H / E on a mode Hamiltonian.
        const real phase = mode.energy * t;
        const cplx c = std::cos(phase);
        const cplx s = cplx(0, -std::sin(phase) / mode.energy);
        const std::vector<cplx>& v = packet.amplitudes[k].components;
        const std::vector<cplx> hv = mode.hamiltonian * v;
        for (int i = 0; i < mode.dim(); ++i) {
            out.amplitudes[k].components[i] = c * v[i] + s * hv[i];
        }
    }
    return out;
}

real packet_charge_norm(const WavePacket& packet) {
    const int n = packet.grid.n_points;
    std::vector<real> terms(n);
    for (int k = 0; k < n; ++k) terms[k] = charge_norm(packet.amplitudes[k]);
    return pairwise_sum(terms) * packet.grid.dp;
}

real sector_purity(const WavePacket& packet) {
    const int n = packet.grid.n_points;
    std::vector<real> plus(n), minus(n);
    for (int k = 0; k < n; ++k) {
        const ModeOperators mode = packet_mode(packet, k);
        const EnergyProjectors proj = energy_projectors_algebraic(mode);
        const std::vector<cplx> up = proj.lambda_plus * packet.amplitudes[k].components;
        const std::vector<cplx> um = proj.lambda_minus * packet.amplitudes[k].components;
        real sp = 0, sm = 0;
        for (const auto& x : up) sp += std::norm(x);
        for (const auto& x : um) sm += std::norm(x);
        plus[k] = sp;
        minus[k] = sm;
    }
    const real sp = pairwise_sum(plus);
    const real sm = pairwise_sum(minus);
    if (sp + sm == real(0)) throw NullNormError("sector_purity: empty packet");
    return sp / (sp + sm);
}

real position_expectation(const WavePacket& packet) {
    const int n = packet.grid.n_points;
    const int dim = dimension_of(packet.kind);
    const real norm = packet_charge_norm(packet);
    if (std::abs(norm) < real(1e-14)) {
        throw NullNormError("position_expectation: packet has null charge-form norm");
    }
    // i d/dp per spinor component, then the metric pairing.
    std::vector<std::vector<cplx>> derivative(dim);
    std::vector<cplx> line(n);
    for (int c = 0; c < dim; ++c) {
        for (int k = 0; k < n; ++k) line[k] = packet.amplitudes[k].components[c];
        FftEngine::instance().spectral_derivative_times_i(line, derivative[c], packet.grid.dp);
    }
    std::vector<real> re_terms(n), im_terms(n);
    for (int k = 0; k < n; ++k) {
        cplx acc(0);
        for (int c = 0; c < dim; ++c) {
            const real sign =
                (packet.kind == RepresentationKind::Dirac || c < dim / 2) ? 1 : -1;
            acc += sign * std::conj(packet.amplitudes[k].components[c]) * derivative[c][k];
        }
        re_terms[k] = acc.real();
        im_terms[k] = acc.imag();
    }
    const real re = pairwise_sum(re_terms) * packet.grid.dp / norm;
    const real im = pairwise_sum(im_terms) * packet.grid.dp / norm;
    if (std::abs(im) > real(1e-9) * std::max(real(1), std::abs(re))) {
        throw Error("position_expectation: imaginary residue " +
                    std::to_string(static_cast<double>(im)) + " exceeds 1e-9");
    }
    return re;
}

ZbwFit zbw_amplitude(const std::vector<real>& times, const std::vector<real>& positions) {
    if (times.size() != positions.size() || times.size() < 16) {
        throw ParameterError("zbw_amplitude: need matching arrays with >= 16 samples");
    }
    const real window = times.back() - times.front();
    if (!(window > real(0))) throw ParameterError("zbw_amplitude: times must increase");
    const real dt = window / real(times.size() - 1);
    // Bracket: at least ~4 cycles in the window up to ~0.8 of Nyquist.
    const real omega_min = 8 * kPi / window;
    const real omega_max = real(0.8L) * kPi / dt;
    const DriftCosineFit fit = fit_drift_cosine(times, positions, omega_min, omega_max);
    return ZbwFit{fit.amplitude, fit.omega, fit.drift, fit.rms_residual};
}

ZbwFit zbw_amplitude(const Trajectory& trajectory) {
    std::vector<real> xs(trajectory.samples.size());
    for (size_t i = 0; i < xs.size(); ++i) xs[i] = trajectory.samples[i].real();
    return zbw_amplitude(trajectory.times, xs);
}

}  // namespace zbw
