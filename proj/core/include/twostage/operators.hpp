#pragma once

#include <cstddef>

#include "twostage/dense.hpp"
#include "twostage/splitting.hpp"

namespace twostage {

/// T_s = (F^{-1}G)^s + sum_{j<s} (F^{-1}G)^j F^{-1} V.
DenseMatrix build_T(const Splitting& outer, const Splitting& inner, std::size_t s);

/// I - (I - (F^{-1}G)^s)(I - U^{-1}V); equal to build_T in exact arithmetic.
DenseMatrix build_T_closed_form(const Splitting& outer, const Splitting& inner, std::size_t s);

/// That_s = (GF^{-1})^s + sum_{j<s} (GF^{-1})^j V F^{-1}.
DenseMatrix build_T_hat(const Splitting& outer, const Splitting& inner, std::size_t s);

/// P_s^{-1} = sum_{j<s} (F^{-1}G)^j F^{-1}.
DenseMatrix build_P_inv(const Splitting& inner, std::size_t s);

/// F^{-1} sum_{j<s} (GF^{-1})^j; the right-handed form of build_P_inv.
DenseMatrix build_P_inv_right(const Splitting& inner, std::size_t s);

}  // namespace twostage
