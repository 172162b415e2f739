#pragma once

#include "bipartite.hpp"
#include "construct.hpp"
#include "error.hpp"
#include "flow.hpp"
#include "io.hpp"
#include "kflow.hpp"
#include "oracle.hpp"
#include "primes.hpp"
#include "shelf.hpp"
#include "shifting.hpp"
