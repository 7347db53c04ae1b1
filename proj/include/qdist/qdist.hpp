#ifndef QDIST_QDIST_HPP
#define QDIST_QDIST_HPP

#include "qdist/characters.hpp"
#include "qdist/config.hpp"
#include "qdist/counting.hpp"
#include "qdist/cyclotomic.hpp"
#include "qdist/error.hpp"
#include "qdist/field.hpp"
#include "qdist/fourier.hpp"
#include "qdist/io.hpp"
#include "qdist/parallel.hpp"
#include "qdist/point.hpp"
#include "qdist/point_set.hpp"
#include "qdist/quad_form.hpp"
#include "qdist/random.hpp"
#include "qdist/rational.hpp"
#include "qdist/report.hpp"
#include "qdist/runner.hpp"
#include "qdist/sharpness.hpp"
#include "qdist/theorem.hpp"
#include "qdist/verify.hpp"

#endif  // QDIST_QDIST_HPP
