#pragma once

#include "sharpe_bound/anomaly.hpp"
#include "sharpe_bound/csv.hpp"
#include "sharpe_bound/error.hpp"
#include "sharpe_bound/frontier.hpp"
#include "sharpe_bound/golden.hpp"
#include "sharpe_bound/metrics.hpp"
#include "sharpe_bound/oracle.hpp"
#include "sharpe_bound/random.hpp"
#include "sharpe_bound/reference_tables.hpp"
#include "sharpe_bound/summation.hpp"
#include "sharpe_bound/svg.hpp"
