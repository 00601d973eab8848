#pragma once

#include "bentpart/bent_analysis.hpp"
#include "bentpart/constructions.hpp"
#include "bentpart/cyclotomic.hpp"
#include "bentpart/depth_search.hpp"
#include "bentpart/field.hpp"
#include "bentpart/hadamard.hpp"
#include "bentpart/partition.hpp"
#include "bentpart/serialization.hpp"
#include "bentpart/transform.hpp"
