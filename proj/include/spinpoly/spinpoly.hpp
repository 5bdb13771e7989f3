#pragma once

#include "spinpoly/asymptotics.hpp"
#include "spinpoly/cayley_hamilton.hpp"
#include "spinpoly/matrix.hpp"
#include "spinpoly/matrix_io.hpp"
#include "spinpoly/parallel.hpp"
#include "spinpoly/rational.hpp"
#include "spinpoly/series.hpp"
#include "spinpoly/spin.hpp"
#include "spinpoly/spin_algebra.hpp"
#include "spinpoly/vandermonde.hpp"
#include "spinpoly/verify.hpp"
