#pragma once
#include "building.hpp"
#include "domain.hpp"
#include "error.hpp"
#include "gf.hpp"
#include "hecke.hpp"
#include "laurent.hpp"
#include "quotient.hpp"
#include "scalar.hpp"
