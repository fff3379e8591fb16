#pragma once

#include "cft/algebra.hpp"
#include "cft/field_io.hpp"
#include "cft/generators.hpp"
#include "cft/grid.hpp"
#include "cft/kernel.hpp"
#include "cft/monogenic.hpp"
#include "cft/rng.hpp"
#include "cft/transform.hpp"
#include "cft/version.hpp"
