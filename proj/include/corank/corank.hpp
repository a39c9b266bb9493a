#pragma once

#include "corank/coranking.hpp"
#include "corank/datasets.hpp"
#include "corank/geometry.hpp"
#include "corank/io.hpp"
#include "corank/local_quality.hpp"
#include "corank/measures.hpp"
#include "corank/parallel.hpp"
#include "corank/ranking.hpp"
#include "corank/rng.hpp"
#include "corank/types.hpp"
