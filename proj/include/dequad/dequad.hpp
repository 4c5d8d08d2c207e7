#pragma once

#include "dequad/bench.hpp"
#include "dequad/error_model.hpp"
#include "dequad/errors.hpp"
#include "dequad/expr.hpp"
#include "dequad/fourier_de.hpp"
#include "dequad/linalg.hpp"
#include "dequad/quad.hpp"
#include "dequad/sinc_bvp.hpp"
#include "dequad/transforms.hpp"
