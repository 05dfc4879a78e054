#pragma once

#include "dcb/channelization.hpp"
#include "dcb/compare.hpp"
#include "dcb/ctmn.hpp"
#include "dcb/deployment.hpp"
#include "dcb/dump.hpp"
#include "dcb/error.hpp"
#include "dcb/gillespie.hpp"
#include "dcb/io/mcs_table.hpp"
#include "dcb/io/scenario_yaml.hpp"
#include "dcb/io/sweep_yaml.hpp"
#include "dcb/metrics.hpp"
#include "dcb/phy_timing.hpp"
#include "dcb/policy.hpp"
#include "dcb/propagation.hpp"
#include "dcb/random.hpp"
#include "dcb/report_csv.hpp"
#include "dcb/scenario.hpp"
#include "dcb/solver.hpp"
#include "dcb/sweep.hpp"
