#ifndef QPP_QPP_HPP
#define QPP_QPP_HPP

#include <qpp/canonical.hpp>
#include <qpp/catalog.hpp>
#include <qpp/errors.hpp>
#include <qpp/eval.hpp>
#include <qpp/expr.hpp>
#include <qpp/partitions.hpp>
#include <qpp/products.hpp>
#include <qpp/rational.hpp>
#include <qpp/report.hpp>
#include <qpp/series.hpp>
#include <qpp/summation.hpp>

#endif
