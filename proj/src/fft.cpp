#include "alp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace alp {

namespace {
std::mutex plan_mutex;
// fftw_execute_dft on a cached plan with fresh buffers is safe as long as the
// arrays have the same alignment characteristics; we always pass fftw_malloc'd
// buffers.
std::map<std::pair<int, int>, fftw_plan>& plan_cache() {
    static std::map<std::pair<int, int>, fftw_plan> cache;
    return cache;
}

fftw_plan get_plan(int n, int sign, fftw_complex* in, fftw_complex* out) {
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = plan_cache().find(key);
    if (it != plan_cache().end()) return it->second;
    fftw_plan p = fftw_plan_dft_1d(n, in, out, sign, FFTW_ESTIMATE);
    plan_cache()[key] = p;
    return p;
}
}  // namespace

Vec fft(const Vec& in, int sign) {
    const int n = static_cast<int>(in.size());
    if (n == 0) return in;
    fftw_complex* buf_in = fftw_alloc_complex(n);
    fftw_complex* buf_out = fftw_alloc_complex(n);
    for (int i = 0; i < n; ++i) {
        buf_in[i][0] = in[i].real();
        buf_in[i][1] = in[i].imag();
    }
    fftw_plan p = get_plan(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD, buf_in, buf_out);
    fftw_execute_dft(p, buf_in, buf_out);
    Vec out(n);
    for (int i = 0; i < n; ++i) out[i] = cxd(buf_out[i][0], buf_out[i][1]);
    fftw_free(buf_in);
    fftw_free(buf_out);
    return out;
}

}  // namespace alp
