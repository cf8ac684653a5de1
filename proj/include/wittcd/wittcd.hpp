#pragma once

#include "linalg.hpp"
#include "finite_field.hpp"
#include "perfect_ring.hpp"
#include "finite_ring.hpp"
#include "multipoly.hpp"
#include "witt_polys.hpp"
#include "witt_ring.hpp"
#include "galois_ring.hpp"
#include "monoid_algebra.hpp"
#include "comparison.hpp"
#include "modules.hpp"
#include "homological.hpp"
