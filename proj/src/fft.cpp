#include "hallmhd/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace hallmhd {
namespace fft {

namespace {

struct PlanCache {
    std::mutex mu;
    std::map<int, fftw_plan> fwd;
    std::map<int, fftw_plan> bwd;

    fftw_plan get(int n, bool forward_dir) {
        std::lock_guard<std::mutex> lock(mu);
        auto& table = forward_dir ? fwd : bwd;
        auto it = table.find(n);
        if (it != table.end()) return it->second;
        // FFTW_UNALIGNED lets the plan run on any caller buffer via
        // fftw_execute_dft; the planner itself is not thread-safe, hence
        // the lock around creation.
        std::vector<fftw_complex> a(static_cast<std::size_t>(n) * n * n);
        std::vector<fftw_complex> b(a.size());
        fftw_plan p = fftw_plan_dft_3d(n, n, n, a.data(), b.data(),
                                       forward_dir ? FFTW_FORWARD : FFTW_BACKWARD,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        table.emplace(n, p);
        return p;
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

}  // namespace

void forward(int n, const cplx* in, cplx* out) {
    fftw_plan p = cache().get(n, true);
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

void backward(int n, const cplx* in, cplx* out) {
    fftw_plan p = cache().get(n, false);
    fftw_execute_dft(p,
                     reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

}  // namespace fft
}  // namespace hallmhd
