#pragma once

#include "limop/errors.hpp"
#include "limop/spaces.hpp"
#include "limop/polytope.hpp"
#include "limop/convex_fn.hpp"
#include "limop/conjugate.hpp"
#include "limop/weakstar.hpp"
#include "limop/differentiability.hpp"
#include "limop/limited.hpp"
#include "limop/report.hpp"
