#pragma once
#include <Eigen/Dense>
#include <complex>

namespace alp {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// Unnormalized DFT: out_k = sum_j in_j e^{-2pi i jk/n} (sign +1 for the inverse kernel).
// Plans are cached per (n, sign) behind a mutex; execution is thread-safe.
Vec fft(const Vec& in, int sign);

inline Vec fft_forward(const Vec& in) { return fft(in, -1); }
inline Vec fft_backward(const Vec& in) { return fft(in, +1); }

}  // namespace alp
