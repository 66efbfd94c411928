#pragma once

#include "itrav/algebraic.hpp"
#include "itrav/arithmetic.hpp"
#include "itrav/chain_oracle.hpp"
#include "itrav/combinatorial.hpp"
#include "itrav/config.hpp"
#include "itrav/graph.hpp"
#include "itrav/io.hpp"
#include "itrav/random_graph.hpp"
#include "itrav/renumber.hpp"
#include "itrav/trace.hpp"
