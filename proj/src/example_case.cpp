#include "riskfilt/example_case.hpp"

#include <cmath>
#include <cstring>
#include <ostream>

#include "riskfilt/csv.hpp"
#include "riskfilt/filters.hpp"

namespace riskfilt::example {

namespace {
const double kSqrt3 = std::sqrt(3.0);
}

ModelSpec demo_spec() {
    return ModelSpec::constant(0.0, 1.0, SymMat2{2.0, -1.0, 1.0}, -1.0, 1.0);
}

ValidatedModel demo_model(const TimeGrid& grid) {
    ModelSpec spec = demo_spec();
    spec.T = grid.T;
    return validate_model(spec, grid);
}

double gamma_xx(double t) { return std::tanh(kSqrt3 * t) / kSqrt3; }

double phi2(double T, double t) { return std::sinh(T - t); }

double phi1(double T, double t) {
    return std::cosh(T - t) + std::tanh(kSqrt3 * t) * std::sinh(T - t) / kSqrt3;
}

double Gamma(double T, double t) { return phi2(T, t) / phi1(T, t); }

double alpha(double T, double t) {
    return 0.5 * (kSqrt3 + 1.0) * std::cosh(T + (kSqrt3 - 1.0) * t) +
           0.5 * (kSqrt3 - 1.0) * std::cosh(T - (kSqrt3 + 1.0) * t);
}

double Hbar(double T, double t, double s) {
    return std::sinh(kSqrt3 * s) * std::cosh(T - t) / std::sqrt(alpha(T, t) * alpha(T, s));
}

double Hhat(double t, double s) {
    return std::cbrt(std::cosh(kSqrt3 * t)) * std::sinh(kSqrt3 * s) /
           (kSqrt3 * std::cbrt(std::cosh(kSqrt3 * s) * std::cosh(kSqrt3 * s)));
}

double eval(Quantity what, const EvalPoint& p) {
    if (!(0.0 <= p.s && p.s <= p.t && p.t <= p.T)) {
        throw ValidationError("BadPoint", "evaluation point must satisfy 0 <= s <= t <= T");
    }
    switch (what) {
        case Quantity::GammaXX: return gamma_xx(p.t);
        case Quantity::Gamma: return Gamma(p.T, p.t);
        case Quantity::Phi1: return phi1(p.T, p.t);
        case Quantity::Phi2: return phi2(p.T, p.t);
        case Quantity::Alpha: return alpha(p.T, p.t);
        case Quantity::Hbar: return Hbar(p.T, p.t, p.s);
        case Quantity::Hhat: default: return Hhat(p.t, p.s);
    }
}

DiscrepancyReport discrepancy_report(const TimeGrid& grid) {
    const double T1 = grid.T;
    const double T2 = 2.0 * grid.T;
    const TimeGrid grid2{T2, 2 * grid.N};  // same dt, doubled horizon

    const ValidatedModel m1 = demo_model(grid);
    const ValidatedModel m2 = demo_model(grid2);

    const TriKernel leg1 = extract_kernel(leg_gains(m1));
    const TriKernel leg2 = extract_kernel(leg_gains(m2));
    const FilterGains rs1_gains = rs_gains(m1);
    const TriKernel rs1 = extract_kernel(rs1_gains);
    const TriKernel rs2 = extract_kernel(rs_gains(m2));

    DiscrepancyReport rep;

    // RS horizon invariance, checked bitwise on the shared triangle.
    rep.rs_bit_identical = true;
    for (int i = 0; i <= grid.N && rep.rs_bit_identical; ++i) {
        if (std::memcmp(rs1.row(i), rs2.row(i), (static_cast<std::size_t>(i) + 1) * sizeof(double)) !=
            0) {
            rep.rs_bit_identical = false;
        }
    }

    // Probe lattice at eighths of the base horizon.
    for (int it = 1; it <= 8; ++it) {
        for (int is = 1; is <= it; ++is) {
            const int i = (grid.N * it) / 8;
            const int j = (grid.N * is) / 8;
            const double t = grid.node(i);
            const double s = grid.node(j);
            const DiscrepancyRow r1{T1, t, s, Hbar(T1, t, s), rs1.at(i, j), Hhat(t, s)};
            const DiscrepancyRow r2{T2, t, s, Hbar(T2, t, s), rs2.at(i, j), Hhat(t, s)};
            rep.rows.push_back(r1);
            rep.rows.push_back(r2);
            rep.max_horizon_gap = std::max(rep.max_horizon_gap, std::abs(r1.Hbar - r2.Hbar));
        }
    }

    // Printed Hhat against the extracted RS kernel over the whole triangle.
    for (int i = 0; i <= grid.N; ++i) {
        const double t = grid.node(i);
        const double* row = rs1.row(i);
        for (int j = 0; j <= i; ++j) {
            rep.max_rs_vs_printed =
                std::max(rep.max_rs_vs_printed, std::abs(Hhat(t, grid.node(j)) - row[j]));
        }
        rep.max_rs_diag_dev = std::max(
            rep.max_rs_diag_dev,
            std::abs(row[i] - rs1_gains.c[i] * rs1_gains.obsgain[i]));
    }
    const int ip = grid.N;
    const int jp = grid.N / 2;
    rep.printed_dev_at_probe = std::abs(Hhat(grid.node(ip), grid.node(jp)) - rs1.at(ip, jp));
    return rep;
}

void write_discrepancy_csv(const DiscrepancyReport& report, std::ostream& os) {
    os << "T,t,s,Hbar,Hhat_numeric,Hhat_printed\n";
    for (const auto& r : report.rows) {
        os << fmt_double(r.T) << ',' << fmt_double(r.t) << ',' << fmt_double(r.s) << ','
           << fmt_double(r.Hbar) << ',' << fmt_double(r.Hhat_numeric) << ','
           << fmt_double(r.Hhat_printed) << '\n';
    }
}

void write_discrepancy_txt(const DiscrepancyReport& report, std::ostream& os) {
    os << "LEG vs RS filtering on the constant-coefficient demo model\n"
       << "===========================================================\n\n"
       << "The LEG impulse-response kernel Hbar(T,t,s) changes with the horizon T:\n"
       << "  max |Hbar(T,t,s) - Hbar(2T,t,s)| over the probe lattice = "
       << fmt_double(report.max_horizon_gap) << "\n\n"
       << "The RS kernel does not depend on the horizon:\n"
       << "  extracted RS kernels for T and 2T are "
       << (report.rs_bit_identical ? "bit-identical" : "NOT bit-identical")
       << " on the shared triangle.\n\n"
       << "Since the LEG solution moves with T and the RS one cannot, the two\n"
       << "optimal filters differ on this model.\n\n"
       << "Printed closed-form RS kernel Hhat(t,s):\n"
       << "  max |Hhat_printed - Hhat_numeric| over the triangle = "
       << fmt_double(report.max_rs_vs_printed) << "\n"
       << "  |Hhat_printed - Hhat_numeric| at (t,s) = (T, T/2)   = "
       << fmt_double(report.printed_dev_at_probe) << "\n"
       << "  max |Hhat_numeric(t,t) - c(t) A gammaXX(t)|         = "
       << fmt_double(report.max_rs_diag_dev) << "\n\n"
       << "The extracted RS kernel satisfies the diagonal identity\n"
       << "Hhat(t,t) = c(t) A(t) gammaXX(t) and reproduces the RS recursion on\n"
       << "impulse inputs, while the printed formula deviates from it by a large\n"
       << "margin and grows with t. The printed formula is reported verbatim for\n"
       << "reference; the extracted kernel is the authoritative one.\n";
}

}  // namespace riskfilt::example
