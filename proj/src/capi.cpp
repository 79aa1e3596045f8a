#include "zbw/zbwlab.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "zbw/dynamics.hpp"
#include "zbw/errors.hpp"
#include "zbw/fw_transform.hpp"
#include "zbw/matrix_functions.hpp"
#include "zbw/representations.hpp"
#include "zbw/verification.hpp"
#include "zbw/wavepacket.hpp"

// Opaque handle types: thin owners around the core value types. The C
// boundary works in doubles; the core computes in extended precision.

struct zbw_mode {
    zbw::ModeOperators value;
};

struct zbw_fw {
    zbw::ModeOperators mode;
    zbw::FwTransform transform;
};

struct zbw_packet {
    zbw::WavePacket value;
};

namespace {

thread_local std::string g_last_message;

zbw_status classify(const std::exception& e) {
    g_last_message = e.what();
    if (dynamic_cast<const zbw::UnsupportedPhysicsError*>(&e)) return ZBW_UNSUPPORTED;
    if (dynamic_cast<const zbw::DegenerateModeError*>(&e)) return ZBW_UNSUPPORTED;
    if (dynamic_cast<const zbw::NullNormError*>(&e)) return ZBW_UNSUPPORTED;
    if (dynamic_cast<const zbw::ParameterError*>(&e)) return ZBW_INVALID;
    if (dynamic_cast<const zbw::ShapeError*>(&e)) return ZBW_INVALID;
    return ZBW_INTERNAL;
}

template <typename Fn>
zbw_status guarded(Fn&& fn) {
    try {
        fn();
        return ZBW_OK;
    } catch (const std::exception& e) {
        return classify(e);
    } catch (...) {
        g_last_message = "unknown failure";
        return ZBW_INTERNAL;
    }
}

zbw::RepresentationKind to_kind(zbw_kind kind) {
    switch (kind) {
        case ZBW_KIND_DIRAC: return zbw::RepresentationKind::Dirac;
        case ZBW_KIND_GFV: return zbw::RepresentationKind::GFV;
        case ZBW_KIND_SAKATA_TAKETANI: return zbw::RepresentationKind::SakataTaketani;
    }
    throw zbw::ParameterError("unknown representation kind");
}

zbw::ModeOperators build_mode(zbw_kind kind, double mass, const double momentum[3],
                              double gfv_n) {
    const std::array<zbw::real, 3> p{zbw::real(momentum[0]), zbw::real(momentum[1]),
                                     zbw::real(momentum[2])};
    switch (to_kind(kind)) {
        case zbw::RepresentationKind::Dirac: return zbw::build_dirac(zbw::real(mass), p);
        case zbw::RepresentationKind::GFV:
            return zbw::build_gfv(zbw::real(mass), p, zbw::real(gfv_n));
        case zbw::RepresentationKind::SakataTaketani:
            return zbw::build_st(zbw::real(mass), p);
    }
    throw zbw::ParameterError("unknown representation kind");
}

void write_matrix(const zbw::ComplexMatrix& m, double* out) {
    const int n = m.dim();
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            *out++ = static_cast<double>(m(r, c).real());
            *out++ = static_cast<double>(m(r, c).imag());
        }
}

void write_state(const zbw::QuantumState& s, double* out) {
    for (const auto& x : s.components) {
        *out++ = static_cast<double>(x.real());
        *out++ = static_cast<double>(x.imag());
    }
}

zbw::QuantumState read_state(const zbw::ModeOperators& mode, const double* data) {
    std::vector<zbw::cplx> components(mode.dim());
    for (int i = 0; i < mode.dim(); ++i) {
        components[i] = zbw::cplx(zbw::real(data[2 * i]), zbw::real(data[2 * i + 1]));
    }
    return zbw::make_state(mode.kind, std::move(components));
}

void require(bool ok, const char* message) {
    if (!ok) throw zbw::ParameterError(message);
}

}  // namespace

extern "C" {

const char* zbw_last_message(void) { return g_last_message.c_str(); }

int zbw_kind_dimension(zbw_kind kind) {
    switch (kind) {
        case ZBW_KIND_DIRAC: return 4;
        case ZBW_KIND_GFV: return 2;
        case ZBW_KIND_SAKATA_TAKETANI: return 6;
    }
    return 0;
}

zbw_status zbw_mode_create(zbw_kind kind, double mass, const double momentum[3], double gfv_n,
                           zbw_mode** out) {
    return guarded([&] {
        require(momentum != nullptr && out != nullptr, "zbw_mode_create: null pointer");
        *out = new zbw_mode{build_mode(kind, mass, momentum, gfv_n)};
    });
}

void zbw_mode_free(zbw_mode* mode) { delete mode; }

int zbw_mode_dimension(const zbw_mode* mode) { return mode ? mode->value.dim() : 0; }

double zbw_mode_energy(const zbw_mode* mode) {
    return mode ? static_cast<double>(mode->value.energy) : 0.0;
}

zbw_status zbw_mode_matrix(const zbw_mode* mode, zbw_matrix_id which, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "zbw_mode_matrix: null pointer");
        switch (which) {
            case ZBW_MATRIX_HAMILTONIAN: write_matrix(mode->value.hamiltonian, out); return;
            case ZBW_MATRIX_VELOCITY_X: write_matrix(mode->value.velocity[0], out); return;
            case ZBW_MATRIX_VELOCITY_Y: write_matrix(mode->value.velocity[1], out); return;
            case ZBW_MATRIX_VELOCITY_Z: write_matrix(mode->value.velocity[2], out); return;
            case ZBW_MATRIX_METRIC: write_matrix(mode->value.metric(), out); return;
        }
        throw zbw::ParameterError("zbw_mode_matrix: unknown matrix id");
    });
}

zbw_status zbw_mode_velocity_at(const zbw_mode* mode, int axis, double t, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "zbw_mode_velocity_at: null pointer");
        require(axis >= 0 && axis < 3, "zbw_mode_velocity_at: axis must be 0..2");
        write_matrix(zbw::velocity_closed_form(mode->value, zbw::real(t))[axis], out);
    });
}

zbw_status zbw_mode_displacement_at(const zbw_mode* mode, int axis, double t, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "zbw_mode_displacement_at: null pointer");
        require(axis >= 0 && axis < 3, "zbw_mode_displacement_at: axis must be 0..2");
        write_matrix(zbw::displacement_closed_form(mode->value, zbw::real(t))[axis], out);
    });
}

zbw_status zbw_mode_sector_state(const zbw_mode* mode, int sector, double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "zbw_mode_sector_state: null pointer");
        write_state(zbw::sector_basis(mode->value, sector).front(), out);
    });
}

zbw_status zbw_mode_mixed_state(const zbw_mode* mode, double weight_plus, int axis,
                                double* out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "zbw_mode_mixed_state: null pointer");
        write_state(zbw::mixed_sector_state(mode->value, zbw::real(weight_plus), axis), out);
    });
}

zbw_status zbw_mode_expectation(const zbw_mode* mode, const double* state, zbw_observable which,
                                int axis, double t, double* out_re, double* out_im) {
    return guarded([&] {
        require(mode != nullptr && state != nullptr && out_re != nullptr && out_im != nullptr,
                "zbw_mode_expectation: null pointer");
        require(axis >= 0 && axis < 3, "zbw_mode_expectation: axis must be 0..2");
        const zbw::QuantumState psi = read_state(mode->value, state);
        const zbw::ComplexMatrix op =
            (which == ZBW_OBSERVABLE_VELOCITY)
                ? zbw::velocity_closed_form(mode->value, zbw::real(t))[axis]
                : zbw::displacement_closed_form(mode->value, zbw::real(t))[axis];
        const zbw::cplx value = zbw::charge_expectation(psi, op);
        *out_re = static_cast<double>(value.real());
        *out_im = static_cast<double>(value.imag());
    });
}

zbw_status zbw_fw_create(const zbw_mode* mode, zbw_fw** out) {
    return guarded([&] {
        require(mode != nullptr && out != nullptr, "zbw_fw_create: null pointer");
        *out = new zbw_fw{mode->value, zbw::fw_diagonalize(mode->value)};
    });
}

void zbw_fw_free(zbw_fw* fw) { delete fw; }

zbw_status zbw_fw_matrix(const zbw_fw* fw, zbw_fw_matrix_id which, double* out) {
    return guarded([&] {
        require(fw != nullptr && out != nullptr, "zbw_fw_matrix: null pointer");
        switch (which) {
            case ZBW_FW_T: write_matrix(fw->transform.T, out); return;
            case ZBW_FW_T_INV: write_matrix(fw->transform.T_inv, out); return;
            case ZBW_FW_HAMILTONIAN: write_matrix(zbw::fw_hamiltonian(fw->mode), out); return;
            case ZBW_FW_VELOCITY_X: write_matrix(zbw::fw_velocity(fw->mode)[0], out); return;
            case ZBW_FW_VELOCITY_Y: write_matrix(zbw::fw_velocity(fw->mode)[1], out); return;
            case ZBW_FW_VELOCITY_Z: write_matrix(zbw::fw_velocity(fw->mode)[2], out); return;
        }
        throw zbw::ParameterError("zbw_fw_matrix: unknown matrix id");
    });
}

zbw_status zbw_fw_residuals(const zbw_fw* fw, double* hamiltonian_residual,
                            double* velocity_residual) {
    return guarded([&] {
        require(fw != nullptr && hamiltonian_residual != nullptr && velocity_residual != nullptr,
                "zbw_fw_residuals: null pointer");
        const zbw::ComplexMatrix h_fw = zbw::fw_hamiltonian(fw->mode);
        *hamiltonian_residual = static_cast<double>(zbw::max_abs_diff(
            fw->transform.T * fw->mode.hamiltonian * fw->transform.T_inv, h_fw));
        const auto v_fw = zbw::fw_velocity(fw->mode);
        const zbw::ComplexMatrix h_fw_inv = zbw::inverse(h_fw, "H_FW");
        zbw::real worst = 0;
        for (int i = 0; i < 3; ++i) {
            worst = std::max(worst, zbw::max_abs_diff(
                                        v_fw[i], zbw::cplx(fw->mode.momentum[i]) * h_fw_inv));
        }
        *velocity_residual = static_cast<double>(worst);
    });
}

zbw_status zbw_packet_create(zbw_kind kind, double mass, double gfv_n, int axis, double p0,
                             double sigma_p, int n_points, double dp, zbw_composition comp,
                             double weight_plus, zbw_packet** out) {
    return guarded([&] {
        require(out != nullptr, "zbw_packet_create: null pointer");
        zbw::Composition composition = zbw::Composition::PositiveOnly;
        switch (comp) {
            case ZBW_POSITIVE_ONLY: composition = zbw::Composition::PositiveOnly; break;
            case ZBW_NEGATIVE_ONLY: composition = zbw::Composition::NegativeOnly; break;
            case ZBW_MIXED: composition = zbw::Composition::Mixed; break;
        }
        const std::optional<zbw::real> n_param = (kind == ZBW_KIND_GFV)
                                                     ? std::optional<zbw::real>(zbw::real(gfv_n))
                                                     : std::nullopt;
        *out = new zbw_packet{zbw::gaussian_packet(to_kind(kind), zbw::real(mass), n_param, axis,
                                                   zbw::real(p0), zbw::real(sigma_p), n_points,
                                                   zbw::real(dp), composition,
                                                   zbw::real(weight_plus))};
    });
}

void zbw_packet_free(zbw_packet* packet) { delete packet; }

zbw_status zbw_packet_observe(const zbw_packet* packet, double t, double* out_x,
                              double* out_norm, double* out_purity) {
    return guarded([&] {
        require(packet != nullptr && out_x != nullptr && out_norm != nullptr &&
                    out_purity != nullptr,
                "zbw_packet_observe: null pointer");
        const zbw::WavePacket evolved = zbw::evolve_packet(packet->value, zbw::real(t));
        *out_x = static_cast<double>(zbw::position_expectation(evolved));
        *out_norm = static_cast<double>(zbw::packet_charge_norm(evolved));
        *out_purity = static_cast<double>(zbw::sector_purity(evolved));
    });
}

zbw_status zbw_fit_trembling(const double* times, const double* positions, int n,
                             double* out_amplitude, double* out_omega, double* out_drift,
                             double* out_residual) {
    return guarded([&] {
        require(times != nullptr && positions != nullptr && n > 0,
                "zbw_fit_trembling: null input");
        require(out_amplitude != nullptr && out_omega != nullptr && out_drift != nullptr &&
                    out_residual != nullptr,
                "zbw_fit_trembling: null output");
        std::vector<zbw::real> ts(n), xs(n);
        for (int i = 0; i < n; ++i) {
            ts[i] = zbw::real(times[i]);
            xs[i] = zbw::real(positions[i]);
        }
        const zbw::ZbwFit fit = zbw::zbw_amplitude(ts, xs);
        *out_amplitude = static_cast<double>(fit.amplitude);
        *out_omega = static_cast<double>(fit.frequency);
        *out_drift = static_cast<double>(fit.drift);
        *out_residual = static_cast<double>(fit.residual);
    });
}

zbw_status zbw_verify(uint64_t seed, double tolerance_override, int kind,
                      int have_explicit_mode, double mass, const double momentum[3],
                      double gfv_n, int include_packets, char** report) {
    zbw::VerifyReport result;
    const zbw_status status = guarded([&] {
        require(report != nullptr, "zbw_verify: null report pointer");
        zbw::VerifyOptions options;
        options.seed = seed;
        if (tolerance_override > 0) options.tolerance_override = zbw::real(tolerance_override);
        if (kind >= 0) options.kind_filter = to_kind(static_cast<zbw_kind>(kind));
        if (have_explicit_mode) {
            options.mass = zbw::real(mass);
            if (momentum != nullptr) {
                options.momentum = std::array<zbw::real, 3>{
                    zbw::real(momentum[0]), zbw::real(momentum[1]), zbw::real(momentum[2])};
            }
            if (kind == ZBW_KIND_GFV) options.gfv_parameter = zbw::real(gfv_n);
        }
        options.include_packets = include_packets != 0;
        result = zbw::run_verification(options);
        const std::string text = zbw::format_report(result);
        char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
        if (buffer == nullptr) throw std::bad_alloc();
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        *report = buffer;
    });
    if (status != ZBW_OK) return status;
    if (!result.all_passed()) {
        for (const auto& check : result.checks) {
            if (!check.passed) {
                g_last_message = "verification failed: " + check.name;
                break;
            }
        }
        return ZBW_VERIFY_FAILED;
    }
    return ZBW_OK;
}

void zbw_string_free(char* text) { std::free(text); }

}  // extern "C"
