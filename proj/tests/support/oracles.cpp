// Copyright 2026 The pfsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace oracle {

Mat kron(const Mat& a, const Mat& b) {
    Mat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Mat& h) {
    const std::size_t n = static_cast<std::size_t>(h.rows());
    const std::size_t m = 2 * n;
    std::vector<double> a(m * m, 0.0);
    auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * m + j]; };
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const cd z = h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            at(i, j) = z.real();
            at(i + n, j + n) = z.real();
            at(i, j + n) = -z.imag();
            at(i + n, j) = z.imag();
        }
    }
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                off += at(p, q) * at(p, q);
            }
        }
        if (off < 1e-30) {
            break;
        }
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = p + 1; q < m; ++q) {
                if (std::abs(at(p, q)) < 1e-300) {
                    continue;
                }
                const double theta = (at(q, q) - at(p, p)) / (2.0 * at(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < m; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    std::vector<double> ev(m);
    for (std::size_t i = 0; i < m; ++i) {
        ev[i] = at(i, i);
    }
    std::sort(ev.begin(), ev.end());
    // The embedding doubles every eigenvalue.
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = 0.5 * (ev[2 * i] + ev[2 * i + 1]);
    }
    return out;
}

Mat expm_minus_i(const Mat& h, double t) {
    const Mat a = cd(0.0, -t) * h;
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    while (norm / std::ldexp(1.0, squarings) > 0.25) {
        ++squarings;
    }
    const Mat scaled = a / std::ldexp(1.0, squarings);
    Mat term = Mat::Identity(h.rows(), h.cols());
    Mat sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < squarings; ++i) {
        sum = sum * sum;
    }
    return sum;
}

double binomial(int n, int k) {
    if (k < 0 || k > n) {
        return 0.0;
    }
    std::vector<double> row(static_cast<std::size_t>(n) + 1, 0.0);
    row[0] = 1.0;
    for (int i = 1; i <= n; ++i) {
        for (int j = i; j >= 1; --j) {
            row[static_cast<std::size_t>(j)] += row[static_cast<std::size_t>(j - 1)];
        }
    }
    return row[static_cast<std::size_t>(k)];
}

int half(int k) { return k / 2; }

double pf_raise_element(int lambda, int m) {
    if (m >= lambda) {
        return 0.0;
    }
    const int n1 = half(lambda + m);
    const int n2 = half(lambda - m);
    const int s = lambda % 2 == 0 ? 1 : -1;
    const int parity = (n1 + n2) % 2 == 0 ? 1 : -1;
    // (1 - s P) and (1 + s P) are 0 or 2 on a Fock state.
    if (s * parity == -1) {
        // sqrt(2) a1^dagger: target |n1 + 1, n2>
        if (half(lambda + m + 1) != n1 + 1 || half(lambda - m - 1) != n2) {
            return 0.0;
        }
        return std::sqrt(2.0 * (n1 + 1));
    }
    // sqrt(2) a2: target |n1, n2 - 1>
    if (half(lambda + m + 1) != n1 || half(lambda - m - 1) != n2 - 1) {
        return 0.0;
    }
    return std::sqrt(2.0 * n2);
}

double pf_sigma_z(int lambda, int m) {
    const int n1 = half(lambda + m);
    const int n2 = half(lambda - m);
    // Qubit attached in the transformed frame: e for even lambda, g for odd.
    const bool fg_excited = lambda % 2 == 0;
    // U = ((1 - P) (x) 1 + (1 + P) (x) sigma_x) / 2 flips the qubit on even parity.
    const bool even = (n1 + n2) % 2 == 0;
    const bool lab_excited = even ? !fg_excited : fg_excited;
    return lab_excited ? 1.0 : -1.0;
}

namespace {

struct Bright {
    double c, s, g;
    std::vector<double> amp;  // A_k = sqrt(C(lambda, k)) s^k c^(lambda - k)
};

Bright bright_mode(int lambda, double g1, double g2) {
    Bright b;
    b.g = std::sqrt(g1 * g1 + g2 * g2);
    b.c = g1 / b.g;
    b.s = g2 / b.g;
    for (int k = 0; k <= lambda; ++k) {
        b.amp.push_back(std::sqrt(binomial(lambda, k)) * std::pow(b.s, k) * std::pow(b.c, lambda - k));
    }
    return b;
}

}  // namespace

double resonant_sigma_z(int lambda, double g1, double g2, double t) {
    const Bright b = bright_mode(lambda, g1, g2);
    double sz = 0.0;
    for (int k = 0; k <= lambda; ++k) {
        sz -= b.amp[static_cast<std::size_t>(k)] * b.amp[static_cast<std::size_t>(k)] *
              std::cos(2.0 * b.g * std::sqrt(static_cast<double>(k)) * t);
    }
    return sz;
}

double resonant_n1(int lambda, double g1, double g2, double t) {
    const Bright b = bright_mode(lambda, g1, g2);
    auto cs = [&](int k) { return std::cos(b.g * std::sqrt(static_cast<double>(k)) * t); };
    auto sn = [&](int k) { return std::sin(b.g * std::sqrt(static_cast<double>(k)) * t); };
    double nb = 0.0, nd = 0.0, cross = 0.0;
    for (int k = 0; k <= lambda; ++k) {
        const double p = b.amp[static_cast<std::size_t>(k)] * b.amp[static_cast<std::size_t>(k)];
        nb += p * (k - sn(k) * sn(k));
        nd += p * (lambda - k);
        if (k < lambda) {
            cross += std::sqrt(static_cast<double>(lambda - k)) * b.amp[static_cast<std::size_t>(k)] *
                     b.amp[static_cast<std::size_t>(k + 1)] *
                     (std::sqrt(k + 1.0) * cs(k) * cs(k + 1) + std::sqrt(static_cast<double>(k)) * sn(k) * sn(k + 1));
        }
    }
    return b.c * b.c * nb + b.s * b.s * nd - 2.0 * b.c * b.s * cross;
}

double window_rms(const std::vector<double>& x, std::size_t first, std::size_t count) {
    double mean = 0.0;
    for (std::size_t i = first; i < first + count; ++i) {
        mean += x[i];
    }
    mean /= static_cast<double>(count);
    double var = 0.0;
    for (std::size_t i = first; i < first + count; ++i) {
        var += (x[i] - mean) * (x[i] - mean);
    }
    return std::sqrt(var / static_cast<double>(count));
}

}  // namespace oracle
