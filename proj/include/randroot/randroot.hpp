#pragma once

#include "randroot/asymptotics.hpp"
#include "randroot/core_poly.hpp"
#include "randroot/jacobi.hpp"
#include "randroot/kac_rice.hpp"
#include "randroot/montecarlo.hpp"
#include "randroot/quadrature.hpp"
