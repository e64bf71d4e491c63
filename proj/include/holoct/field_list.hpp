#ifndef HOLOCT_FIELD_LIST_HPP
#define HOLOCT_FIELD_LIST_HPP

#include "holoct/arith/prime_field.hpp"
#include "holoct/arith/rational.hpp"
#include "holoct/arith/rational_function.hpp"

// Coefficient fields for which the algorithm templates are instantiated.
#define HOLOCT_FOR_EACH_FIELD(X) X(::holoct::Rationals) X(::holoct::PrimeField) X(::holoct::QT) X(::holoct::FpT)

#endif
