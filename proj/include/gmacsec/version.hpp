#pragma once

#define GMACSEC_VERSION "0.1.0"
