#pragma once

#include "kvc/bounds.hpp"
#include "kvc/connectivity.hpp"
#include "kvc/corpus.hpp"
#include "kvc/error.hpp"
#include "kvc/graph.hpp"
#include "kvc/io.hpp"
#include "kvc/parallel.hpp"
#include "kvc/planarity.hpp"
#include "kvc/reductions.hpp"
#include "kvc/sat.hpp"
#include "kvc/shattering.hpp"
