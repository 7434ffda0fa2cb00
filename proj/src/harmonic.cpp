#include "flowlab/harmonic.hpp"

#include <cmath>

namespace flowlab {

namespace {
constexpr double kZeroDenomTol = 1e-14;
constexpr double kDegenerateTol = 1e-12;
} // namespace

HarmonicMap::HarmonicMap(Expr F, Expr G) {
    fp_ = F.derivative();
    gp_ = G.derivative();
    build_chain();
}

HarmonicMap HarmonicMap::from_derivatives(Expr Fp, Expr Gp) {
    HarmonicMap m;
    m.fp_ = std::move(Fp);
    m.gp_ = std::move(Gp);
    m.build_chain();
    return m;
}

void HarmonicMap::build_chain() {
    fpp_ = fp_.derivative();
    fppp_ = fpp_.derivative();
    gpp_ = gp_.derivative();
    gppp_ = gpp_.derivative();
}

struct HarmonicMap::Frame {
    Complex fp, fpp, fppp, gp, gpp, gppp;
    Complex q, qp, qpp;   // dilatation and its z-derivatives
    double one_minus_q2;
};

HarmonicMap::Frame HarmonicMap::frame_at(Complex z) const {
    Frame fr;
    fr.fp = fp_.eval(z);
    fr.fpp = fpp_.eval(z);
    fr.fppp = fppp_.eval(z);
    fr.gp = gp_.eval(z);
    fr.gpp = gpp_.eval(z);
    fr.gppp = gppp_.eval(z);
    if (std::abs(fr.fp) < kZeroDenomTol)
        raise(ErrorCode::ZeroDenominator, "HarmonicMap: F'(z) vanishes");
    fr.q = fr.gp / fr.fp;
    Complex fp2 = fr.fp * fr.fp;
    fr.qp = (fr.gpp * fr.fp - fr.gp * fr.fpp) / fp2;
    fr.qpp = ((fr.gppp * fr.fp - fr.gp * fr.fppp) * fr.fp
              - 2.0 * fr.fpp * (fr.gpp * fr.fp - fr.gp * fr.fpp)) / (fp2 * fr.fp);
    fr.one_minus_q2 = 1.0 - abs2(fr.q);
    return fr;
}

double HarmonicMap::jacobian(Complex z) const {
    return abs2(fp_.eval(z)) - abs2(gp_.eval(z));
}

Complex HarmonicMap::dilatation(Complex z) const {
    Complex fp = fp_.eval(z);
    if (std::abs(fp) < kZeroDenomTol)
        raise(ErrorCode::ZeroDenominator, "HarmonicMap::dilatation: F'(z) vanishes");
    return gp_.eval(z) / fp;
}

Complex HarmonicMap::pre_schwarzian(Complex z) const {
    Frame fr = frame_at(z);
    if (std::abs(fr.one_minus_q2) < kDegenerateTol)
        raise(ErrorCode::DegenerateDilatation, "HarmonicMap::pre_schwarzian: 1 - |q|^2 degenerate");
    return fr.fpp / fr.fp - fr.qp * std::conj(fr.q) / fr.one_minus_q2;
}

Complex HarmonicMap::schwarzian(Complex z) const {
    Frame fr = frame_at(z);
    if (std::abs(fr.one_minus_q2) < kDegenerateTol)
        raise(ErrorCode::DegenerateDilatation, "HarmonicMap::schwarzian: 1 - |q|^2 degenerate");
    Complex w = fr.fpp / fr.fp;
    Complex sf = fr.fppp / fr.fp - 1.5 * w * w;
    Complex qbar = std::conj(fr.q);
    Complex t1 = qbar / fr.one_minus_q2 * (w * fr.qp - fr.qpp);
    Complex t2 = fr.qp * qbar / fr.one_minus_q2;
    return sf + t1 - 1.5 * t2 * t2;
}

Complex classical_schwarzian(const Expr& F, Complex z) {
    Expr fp = F.derivative();
    Expr fpp = fp.derivative();
    Expr fppp = fpp.derivative();
    Complex d1 = fp.eval(z);
    if (std::abs(d1) < kZeroDenomTol)
        raise(ErrorCode::ZeroDenominator, "classical_schwarzian: F'(z) vanishes");
    Complex d2 = fpp.eval(z);
    Complex d3 = fppp.eval(z);
    Complex w = d2 / d1;
    return d3 / d1 - 1.5 * w * w;
}

} // namespace flowlab
