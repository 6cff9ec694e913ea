#pragma once

#include "errors.hpp"
#include "multipoly.hpp"
#include "parser.hpp"
#include "rational.hpp"
#include "series.hpp"
#include "upops.hpp"
#include "varset.hpp"
