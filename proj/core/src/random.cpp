#include "qjp/random.hpp"

namespace qjp {

double RandomSource::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
}

double RandomSource::normal() {
    return std::normal_distribution<double>(0.0, 1.0)(engine_);
}

Complex RandomSource::complex_normal() {
    double re = normal();
    double im = normal();
    return Complex(re, im);
}

PureState RandomSource::state(int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i)
        v[i] = complex_normal();
    return PureState(v);
}

Matrix RandomSource::hermitian(int dim) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m(i, j) = complex_normal();
    return (m + m.adjoint()) / 2.0;
}

std::vector<double> RandomSource::real_function(int n, double lo, double hi) {
    std::vector<double> out(n);
    for (double& v : out)
        v = uniform(lo, hi);
    return out;
}

} // namespace qjp
