// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "spherehit/error.hpp"
#include "spherehit/specfun/bessel.hpp"
#include "spherehit/specfun/polynomials.hpp"
#include "spherehit/specfun/quadrature.hpp"
#include "spherehit/specfun/series.hpp"
#include "spherehit/specfun/sphere.hpp"
#include "spherehit/specfun/transition.hpp"
#include "spherehit/fpt/geometry.hpp"
#include "spherehit/fpt/laplace_inversion.hpp"
#include "spherehit/fpt/first_passage.hpp"
#include "spherehit/jointdist/series_terms.hpp"
#include "spherehit/jointdist/joint.hpp"
#include "spherehit/jointdist/probability.hpp"
#include "spherehit/jointdist/drift.hpp"
#include "spherehit/mcverify/philox.hpp"
#include "spherehit/mcverify/simulate.hpp"
#include "spherehit/mcverify/estimate.hpp"
