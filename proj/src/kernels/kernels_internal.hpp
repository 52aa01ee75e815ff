#pragma once

#include "morphofilter/kernels.hpp"

namespace morpho::kernels::detail {

const KernelTable& scalar_table() noexcept;

#if defined(MORPHOFILTER_HAVE_AVX2)
const KernelTable& avx2_table() noexcept;
#endif

}  // namespace morpho::kernels::detail
