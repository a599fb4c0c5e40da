#pragma once

#include "dioph/error.hpp"
#include "dioph/real.hpp"
#include "dioph/matrix.hpp"
#include "dioph/exactcore.hpp"
#include "dioph/normal_form.hpp"
#include "dioph/lll.hpp"
#include "dioph/jacobi_svd.hpp"
#include "dioph/angles.hpp"
#include "dioph/grassmann.hpp"
#include "dioph/parallel.hpp"
#include "dioph/random.hpp"
#include "dioph/enumerate.hpp"
#include "dioph/param_expr.hpp"
#include "dioph/witness.hpp"
#include "dioph/dirichlet.hpp"
