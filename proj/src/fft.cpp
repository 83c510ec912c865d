#include "fkg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

#include "fkg/errors.hpp"

namespace fkg::fft {

namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

// Plans are created once per size with FFTW_UNALIGNED so fftw_execute_dft may
// run on whatever buffers the caller owns. They are never destroyed; the
// handful of sizes used per process makes that a non-issue.
const PlanPair& plans_for(int n) {
    static std::mutex mtx;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Out-of-place plans; fftw_execute_dft requires the in-place-ness of the
    // execution arrays to match the plan's.
    fftw_complex* bin = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_complex* bout = fftw_alloc_complex(static_cast<size_t>(n));
    PlanPair p;
    p.fwd = fftw_plan_dft_1d(n, bin, bout, FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.bwd = fftw_plan_dft_1d(n, bin, bout, FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(bin);
    fftw_free(bout);
    if (!p.fwd || !p.bwd) throw numerical_guard("fftw plan creation failed for n=" + std::to_string(n));
    return cache.emplace(n, p).first->second;
}

fftw_complex* as_fftw(cplx* p) { return reinterpret_cast<fftw_complex*>(p); }

void run(fftw_plan plan, std::span<const cplx> in, std::span<cplx> out) {
    if (in.size() != out.size()) throw invalid_config("fft: size mismatch");
    if (in.data() == out.data()) {
        std::vector<cplx> tmp(in.begin(), in.end());
        fftw_execute_dft(plan, as_fftw(tmp.data()), as_fftw(out.data()));
        return;
    }
    fftw_execute_dft(plan, as_fftw(const_cast<cplx*>(in.data())), as_fftw(out.data()));
}

} // namespace

void forward(std::span<const cplx> in, std::span<cplx> out) {
    run(plans_for(static_cast<int>(in.size())).fwd, in, out);
}

void backward(std::span<const cplx> in, std::span<cplx> out) {
    run(plans_for(static_cast<int>(in.size())).bwd, in, out);
}

} // namespace fkg::fft
