#ifndef SPHREG_SPHREG_HPP
#define SPHREG_SPHREG_HPP

#include "sphreg/coefficients.hpp"
#include "sphreg/frontier.hpp"
#include "sphreg/io.hpp"
#include "sphreg/legendre.hpp"
#include "sphreg/norms.hpp"
#include "sphreg/regularize.hpp"
#include "sphreg/scaling.hpp"
#include "sphreg/sht.hpp"
#include "sphreg/simulate.hpp"
#include "sphreg/stats.hpp"

#endif  // SPHREG_SPHREG_HPP
