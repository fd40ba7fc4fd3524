#ifndef IFRLAG_IFRLAG_HPP
#define IFRLAG_IFRLAG_HPP

#include "ifrlag/domain.hpp"
#include "ifrlag/error.hpp"
#include "ifrlag/fit.hpp"
#include "ifrlag/infection.hpp"
#include "ifrlag/ingest.hpp"
#include "ifrlag/intervals.hpp"
#include "ifrlag/lag.hpp"
#include "ifrlag/random.hpp"
#include "ifrlag/synth.hpp"

#endif  // IFRLAG_IFRLAG_HPP
