#pragma once

#include "bigint.hpp"
#include "config.hpp"
#include "error.hpp"
#include "parallel.hpp"

#include "ff/artin_schreier.hpp"
#include "ff/factor.hpp"
#include "ff/field.hpp"
#include "ff/minpoly.hpp"
#include "ff/poly.hpp"
#include "ff/roots.hpp"
#include "ff/roots_of_unity.hpp"
#include "ff/tower.hpp"

#include "ec/curve.hpp"
#include "ec/jinvariant.hpp"
#include "ec/label.hpp"
#include "ec/point_count.hpp"

#include "hecke/modular_polynomial.hpp"
#include "hecke/neighbors.hpp"

#include "constructions/common.hpp"
#include "constructions/monomial.hpp"
#include "constructions/translate.hpp"

#include "census/census.hpp"
#include "census/goodness.hpp"
#include "census/spec_file.hpp"
#include "census/variety.hpp"

#include "io/records.hpp"
