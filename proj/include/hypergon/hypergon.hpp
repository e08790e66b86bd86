#pragma once

#include "hypergon/core.hpp"
#include "hypergon/io.hpp"
#include "hypergon/isoper.hpp"
#include "hypergon/oracle.hpp"
#include "hypergon/polygon.hpp"
#include "hypergon/random.hpp"
#include "hypergon/svg.hpp"
