#pragma once

#include "axicorr/a_form.hpp"
#include "axicorr/complex_matrix.hpp"
#include "axicorr/correlations.hpp"
#include "axicorr/hermitian_eig.hpp"
#include "axicorr/sampling.hpp"
#include "axicorr/spectral.hpp"
#include "axicorr/spin.hpp"
#include "axicorr/sweep.hpp"
#include "axicorr/thermal.hpp"
