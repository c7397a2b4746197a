#pragma once

#include <mutex>
#include <vector>

#include <fftw3.h>

#include "elsc/types.hpp"

namespace elsc {

namespace detail {
inline std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace detail

// In-place complex 2D FFT of size n x n, unnormalized, row-major.
// Plans are created once per instance under the global planner lock;
// execution on caller buffers is thread-safe across instances.
class Fft2d {
public:
    explicit Fft2d(int n) : n_(n) {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n) * n);
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags);
        bwd_ = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags);
        fftw_free(buf);
    }

    ~Fft2d() {
        std::lock_guard<std::mutex> lock(detail::fftw_planner_mutex());
        if (fwd_) fftw_destroy_plan(fwd_);
        if (bwd_) fftw_destroy_plan(bwd_);
    }

    Fft2d(const Fft2d&) = delete;
    Fft2d& operator=(const Fft2d&) = delete;

    void forward(cd* data) const {
        fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(fwd_, p, p);
    }

    void backward(cd* data) const {
        fftw_complex* p = reinterpret_cast<fftw_complex*>(data);
        fftw_execute_dft(bwd_, p, p);
    }

    int size() const { return n_; }

private:
    int n_;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
};

// Swap the half-planes in both axes (fftshift; self-inverse for even n).
inline void shift_halves(std::vector<cd>& a, int n) {
    const int half = n / 2;
    for (int i1 = 0; i1 < half; ++i1)
        for (int i2 = 0; i2 < n; ++i2) {
            const int j1 = i1 + half;
            const int j2 = (i2 + half) % n;
            std::swap(a[i1 * n + i2], a[j1 * n + j2]);
        }
}

}  // namespace elsc
