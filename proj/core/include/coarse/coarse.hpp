#pragma once

#include "coarse/approx.hpp"
#include "coarse/cmatrix.hpp"
#include "coarse/coarse_map.hpp"
#include "coarse/covering.hpp"
#include "coarse/error.hpp"
#include "coarse/harness.hpp"
#include "coarse/linalg.hpp"
#include "coarse/metric_space.hpp"
#include "coarse/module.hpp"
#include "coarse/parallel.hpp"
#include "coarse/profile.hpp"
#include "coarse/quasi_local.hpp"
#include "coarse/relation.hpp"
#include "coarse/space_gen.hpp"
