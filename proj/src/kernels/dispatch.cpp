#include <cstdlib>
#include <string_view>

#include "isoclust/kernels.hpp"

namespace isoclust::kernels {

#if defined(ISOCLUST_HAVE_AVX2)
const KernelTable& avx2_kernels();
#endif

const KernelTable* avx2_table() {
#if defined(ISOCLUST_HAVE_AVX2)
    __builtin_cpu_init();
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_kernels();
#endif
    return nullptr;
}

namespace {

const KernelTable& select() {
    if (const char* env = std::getenv("ISOCLUST_KERNELS"); env != nullptr && std::string_view(env) == "scalar")
        return scalar_table();
    if (const KernelTable* t = avx2_table()) return *t;
    return scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable& table = select();
    return table;
}

}  // namespace isoclust::kernels
