#pragma once

#include "ntw/arith.hpp"
#include "ntw/curve_weights.hpp"
#include "ntw/denef_loeser.hpp"
#include "ntw/errors.hpp"
#include "ntw/ff_oracle.hpp"
#include "ntw/finite_field.hpp"
#include "ntw/hodge_eulerian.hpp"
#include "ntw/lattice_count.hpp"
#include "ntw/linalg.hpp"
#include "ntw/monodromy.hpp"
#include "ntw/polygon2d.hpp"
#include "ntw/polytope.hpp"
#include "ntw/support.hpp"
#include "ntw/surface_weights.hpp"

namespace ntw {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace ntw
