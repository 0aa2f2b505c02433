#pragma once

// Everything in one include.

#include "qmock/error.hpp"
#include "qmock/rational.hpp"
#include "qmock/series.hpp"
#include "qmock/series_io.hpp"
#include "qmock/theta_arg.hpp"
#include "qmock/lazy.hpp"
#include "qmock/products.hpp"
#include "qmock/theta_quotient.hpp"
#include "qmock/hecke.hpp"
#include "qmock/summation.hpp"
#include "qmock/bailey.hpp"
#include "qmock/pair_catalog.hpp"
#include "qmock/classical.hpp"
#include "qmock/expr.hpp"
#include "qmock/report.hpp"
#include "qmock/identities.hpp"
#include "qmock/suites.hpp"
