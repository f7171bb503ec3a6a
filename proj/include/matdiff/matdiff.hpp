#pragma once

#include "matdiff/brownian.hpp"
#include "matdiff/checks.hpp"
#include "matdiff/csv.hpp"
#include "matdiff/functional_calculus.hpp"
#include "matdiff/matrix.hpp"
#include "matdiff/parallel.hpp"
#include "matdiff/random.hpp"
#include "matdiff/report.hpp"
#include "matdiff/sde.hpp"
#include "matdiff/spectral.hpp"
#include "matdiff/statistics.hpp"
#include "matdiff/stochastic_integral.hpp"
#include "matdiff/symmetric_matrix.hpp"
