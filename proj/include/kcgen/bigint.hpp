#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace kcgen {

using BigInt = boost::multiprecision::cpp_int;

inline BigInt pow2(std::size_t e) {
  BigInt r = 1;
  return r << e;
}

}  // namespace kcgen
