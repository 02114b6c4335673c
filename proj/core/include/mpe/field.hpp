#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mpe {

/**
 * Scalar field on the 3D node grid, padded with one ghost layer per face.
 *
 * Physical node indices run i in [0,nx], j in [0,ny], k in [0,nz]; the
 * accessor additionally accepts -1 and n+1 for the ghost layers. Storage is
 * x-fastest, matching the snapshot wire format.
 */
class Field3D {
public:
    Field3D() = default;
    Field3D(int nx, int ny, int nz)
        : nx_(nx), ny_(ny), nz_(nz),
          sx_(nx + 3), sy_(ny + 3),
          data_(static_cast<size_t>(nx + 3) * (ny + 3) * (nz + 3), 0.0) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    int nz() const { return nz_; }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j, int k) { return data_[idx(i, j, k)]; }
    double operator()(int i, int j, int k) const { return data_[idx(i, j, k)]; }

    void fill(double v) { data_.assign(data_.size(), v); }

    // loop over physical nodes only
    template <class F>
    void for_each(F&& f) {
        for (int k = 0; k <= nz_; ++k)
            for (int j = 0; j <= ny_; ++j)
                for (int i = 0; i <= nx_; ++i)
                    f(i, j, k, (*this)(i, j, k));
    }
    template <class F>
    void for_each(F&& f) const {
        for (int k = 0; k <= nz_; ++k)
            for (int j = 0; j <= ny_; ++j)
                for (int i = 0; i <= nx_; ++i)
                    f(i, j, k, (*this)(i, j, k));
    }

    bool finite() const {
        for (int k = 0; k <= nz_; ++k)
            for (int j = 0; j <= ny_; ++j)
                for (int i = 0; i <= nx_; ++i)
                    if (!std::isfinite((*this)(i, j, k))) return false;
        return true;
    }

    double max_abs() const {
        double m = 0.0;
        for_each([&](int, int, int, double v) { m = std::max(m, std::fabs(v)); });
        return m;
    }

private:
    size_t idx(int i, int j, int k) const {
        return (static_cast<size_t>(k + 1) * sy_ + (j + 1)) * sx_ + (i + 1);
    }
    int nx_ = 0, ny_ = 0, nz_ = 0;
    size_t sx_ = 0, sy_ = 0;
    std::vector<double> data_;
};

/// 2D companion (surface fields on M), same ghost convention.
class Field2D {
public:
    Field2D() = default;
    Field2D(int nx, int ny)
        : nx_(nx), ny_(ny), sx_(nx + 3),
          data_(static_cast<size_t>(nx + 3) * (ny + 3), 0.0) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j) { return data_[idx(i, j)]; }
    double operator()(int i, int j) const { return data_[idx(i, j)]; }

    void fill(double v) { data_.assign(data_.size(), v); }

    template <class F>
    void for_each(F&& f) {
        for (int j = 0; j <= ny_; ++j)
            for (int i = 0; i <= nx_; ++i)
                f(i, j, (*this)(i, j));
    }
    template <class F>
    void for_each(F&& f) const {
        for (int j = 0; j <= ny_; ++j)
            for (int i = 0; i <= nx_; ++i)
                f(i, j, (*this)(i, j));
    }

    double max_abs() const {
        double m = 0.0;
        for_each([&](int, int, double v) { m = std::max(m, std::fabs(v)); });
        return m;
    }

private:
    size_t idx(int i, int j) const {
        return static_cast<size_t>(j + 1) * sx_ + (i + 1);
    }
    int nx_ = 0, ny_ = 0;
    size_t sx_ = 0;
    std::vector<double> data_;
};

/// Horizontal velocity pair (v1, v2).
struct VectorField {
    Field3D x, y;
    VectorField() = default;
    VectorField(int nx, int ny, int nz) : x(nx, ny, nz), y(nx, ny, nz) {}
};

struct VectorField2D {
    Field2D x, y;
    VectorField2D() = default;
    VectorField2D(int nx, int ny) : x(nx, ny), y(nx, ny) {}
};

} // namespace mpe
