#pragma once

#include "sfiegarch/acov.hpp"
#include "sfiegarch/coeffs.hpp"
#include "sfiegarch/dataset.hpp"
#include "sfiegarch/error.hpp"
#include "sfiegarch/estimate.hpp"
#include "sfiegarch/evaluate.hpp"
#include "sfiegarch/forecast.hpp"
#include "sfiegarch/innovations.hpp"
#include "sfiegarch/model.hpp"
#include "sfiegarch/simulate.hpp"
#include "sfiegarch/spectral.hpp"
