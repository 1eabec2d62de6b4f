#pragma once

#include "oshop/bench.hpp"
#include "oshop/exact.hpp"
#include "oshop/gen.hpp"
#include "oshop/instance.hpp"
#include "oshop/io.hpp"
#include "oshop/listsched.hpp"
#include "oshop/partition.hpp"
#include "oshop/ptas.hpp"
#include "oshop/rational.hpp"
#include "oshop/schedule.hpp"
