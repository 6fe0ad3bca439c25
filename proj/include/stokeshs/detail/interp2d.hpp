#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace stokeshs::detail {

/// Catmull-Rom bicubic interpolation on a uniform tensor grid; used to make a
/// sampled field (e.g. a computed projection) cheaply re-evaluable.
class Interp2D {
  public:
    Interp2D(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny)
        : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), nx_(nx), ny_(ny),
          v_(static_cast<std::size_t>(nx) * ny, 0.0) {
        if (nx < 4 || ny < 4) throw std::invalid_argument("Interp2D: grid too small");
    }

    double x_at(int i) const { return x_lo_ + (x_hi_ - x_lo_) * i / (nx_ - 1); }
    double y_at(int j) const { return y_lo_ + (y_hi_ - y_lo_) * j / (ny_ - 1); }
    int nx() const { return nx_; }
    int ny() const { return ny_; }
    void set(int i, int j, double v) { v_[static_cast<std::size_t>(j) * nx_ + i] = v; }

    double operator()(double x, double y) const {
        const double fx = (x - x_lo_) / (x_hi_ - x_lo_) * (nx_ - 1);
        const double fy = (y - y_lo_) / (y_hi_ - y_lo_) * (ny_ - 1);
        const int ix = clampi(static_cast<int>(std::floor(fx)), 1, nx_ - 3);
        const int iy = clampi(static_cast<int>(std::floor(fy)), 1, ny_ - 3);
        const double tx = fx - ix, ty = fy - iy;
        double rows[4];
        for (int m = -1; m <= 2; ++m) {
            rows[m + 1] = cr(at(ix - 1, iy + m), at(ix, iy + m), at(ix + 1, iy + m),
                             at(ix + 2, iy + m), tx);
        }
        return cr(rows[0], rows[1], rows[2], rows[3], ty);
    }

  private:
    static int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }
    double at(int i, int j) const {
        i = clampi(i, 0, nx_ - 1);
        j = clampi(j, 0, ny_ - 1);
        return v_[static_cast<std::size_t>(j) * nx_ + i];
    }
    static double cr(double p0, double p1, double p2, double p3, double t) {
        return p1 + 0.5 * t *
                        (p2 - p0 +
                         t * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 +
                              t * (3.0 * (p1 - p2) + p3 - p0)));
    }

    double x_lo_, x_hi_, y_lo_, y_hi_;
    int nx_, ny_;
    std::vector<double> v_;
};

}  // namespace stokeshs::detail
