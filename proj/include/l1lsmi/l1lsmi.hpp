#pragma once

#include "l1lsmi/baselines/lasso.hpp"
#include "l1lsmi/baselines/mrmr.hpp"
#include "l1lsmi/baselines/pearson_rank.hpp"
#include "l1lsmi/baselines/qpfs.hpp"
#include "l1lsmi/baselines/relieff.hpp"
#include "l1lsmi/baselines/sequential.hpp"
#include "l1lsmi/bench/andor_table.hpp"
#include "l1lsmi/bench/benchmark.hpp"
#include "l1lsmi/bench/config.hpp"
#include "l1lsmi/bench/f_measure.hpp"
#include "l1lsmi/bench/methods.hpp"
#include "l1lsmi/bench/report.hpp"
#include "l1lsmi/data/csv.hpp"
#include "l1lsmi/data/dataset.hpp"
#include "l1lsmi/data/distance.hpp"
#include "l1lsmi/data/toy.hpp"
#include "l1lsmi/measures/discrete_mi.hpp"
#include "l1lsmi/measures/hsic.hpp"
#include "l1lsmi/measures/lsmi.hpp"
#include "l1lsmi/measures/pearson.hpp"
#include "l1lsmi/rng.hpp"
#include "l1lsmi/selection.hpp"
#include "l1lsmi/sparse/ascent.hpp"
#include "l1lsmi/sparse/l1_select.hpp"
#include "l1lsmi/sparse/objective.hpp"
#include "l1lsmi/sparse/projection.hpp"
#include "l1lsmi/sparse/radius_search.hpp"
