#include "chns/fields.hpp"

#include <algorithm>
#include <cmath>

namespace chns {

ScalarField axpy(double a, const ScalarField& x, const ScalarField& y) {
    ScalarField out = y;
    for (size_t k = 0; k < out.data.size(); ++k) out.data[k] += a * x.data[k];
    return out;
}

ScalarField lincomb(double a, const ScalarField& x, double b, const ScalarField& y) {
    ScalarField out = x;
    for (size_t k = 0; k < out.data.size(); ++k) out.data[k] = a * x.data[k] + b * y.data[k];
    return out;
}

FaceVectorField lincomb(double a, const FaceVectorField& x, double b, const FaceVectorField& y) {
    FaceVectorField out = x;
    for (size_t k = 0; k < out.u.size(); ++k) out.u[k] = a * x.u[k] + b * y.u[k];
    for (size_t k = 0; k < out.v.size(); ++k) out.v[k] = a * x.v[k] + b * y.v[k];
    return out;
}

void add_scaled(ScalarField& dst, double a, const ScalarField& x) {
    for (size_t k = 0; k < dst.data.size(); ++k) dst.data[k] += a * x.data[k];
}

void add_scaled(FaceVectorField& dst, double a, const FaceVectorField& x) {
    for (size_t k = 0; k < dst.u.size(); ++k) dst.u[k] += a * x.u[k];
    for (size_t k = 0; k < dst.v.size(); ++k) dst.v[k] += a * x.v[k];
}

void scale(ScalarField& f, double a) {
    for (double& v : f.data) v *= a;
}

void scale(FaceVectorField& f, double a) {
    for (double& v : f.u) v *= a;
    for (double& v : f.v) v *= a;
}

bool all_finite(const ScalarField& f) {
    return std::all_of(f.data.begin(), f.data.end(),
                       [](double v) { return std::isfinite(v); });
}

bool all_finite(const FaceVectorField& f) {
    auto ok = [](double v) { return std::isfinite(v); };
    return std::all_of(f.u.begin(), f.u.end(), ok) && std::all_of(f.v.begin(), f.v.end(), ok);
}

double max_abs(const ScalarField& f) {
    double m = 0.0;
    for (double v : f.data) m = std::max(m, std::fabs(v));
    return m;
}

double max_abs(const FaceVectorField& f) {
    double m = 0.0;
    for (double v : f.u) m = std::max(m, std::fabs(v));
    for (double v : f.v) m = std::max(m, std::fabs(v));
    return m;
}

std::string quantity_name(CellQuantity q) {
    switch (q) {
        case CellQuantity::phi: return "phi";
        case CellQuantity::mu: return "mu";
        case CellQuantity::pressure: return "pressure";
        case CellQuantity::pressure_increment: return "pressure_increment";
        default: return "cell_scalar";
    }
}

std::string quantity_name(FaceQuantity q) {
    switch (q) {
        case FaceQuantity::velocity: return "velocity";
        default: return "face_flux";
    }
}

} // namespace chns
