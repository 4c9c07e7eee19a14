#pragma once

#include "fairbc/biclique.hpp"
#include "fairbc/bigraph.hpp"
#include "fairbc/enumerate.hpp"
#include "fairbc/error.hpp"
#include "fairbc/fairset.hpp"
#include "fairbc/io.hpp"
#include "fairbc/oracle.hpp"
#include "fairbc/pruning.hpp"
