"""
Django settings for driftsim project.

Generated by 'django-admin startproject' using Django 2.2.19.

For more information on this file, see
https://docs.djangoproject.com/en/2.2/topics/settings/

For the full list of settings and their values, see
https://docs.djangoproject.com/en/2.2/ref/settings/
"""

import os

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


# Quick-start development settings - unsuitable for production
# See https://docs.djangoproject.com/en/2.2/howto/deployment/checklist/

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.getenv(
    'DRIFTSIM_SECRET_KEY', 'k3v!d8r1ft_x7q@0m#w1nd-f1eld$s1m^2p9z&c4e6t+h5')

# SECURITY WARNING: don't run with debug turned on in production!
DEBUG = True

ALLOWED_HOSTS = [
    'localhost',
    '127.0.0.1',
    '[::1]',
    'testserver',
]

# Application definition

INSTALLED_APPS = [
    'django.contrib.admin',
    'django.contrib.auth',
    'django.contrib.contenttypes',
    'django.contrib.sessions',
    'django.contrib.messages',
    'django.contrib.staticfiles',
    'core.apps.CoreConfig',
    'windfield.apps.WindfieldConfig',
    'dynamics.apps.DynamicsConfig',
    'controller.apps.ControllerConfig',
    'trajgen.apps.TrajgenConfig',
    'driftframe.apps.DriftframeConfig',
    'simengine.apps.SimengineConfig',
    'cli.apps.CliConfig',
]

MIDDLEWARE = [
    'django.middleware.security.SecurityMiddleware',
    'django.contrib.sessions.middleware.SessionMiddleware',
    'django.middleware.common.CommonMiddleware',
    'django.middleware.csrf.CsrfViewMiddleware',
    'django.contrib.auth.middleware.AuthenticationMiddleware',
    'django.contrib.messages.middleware.MessageMiddleware',
    'django.middleware.clickjacking.XFrameOptionsMiddleware',
]

ROOT_URLCONF = 'driftsim.urls'

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [
                'django.template.context_processors.debug',
                'django.template.context_processors.request',
                'django.contrib.auth.context_processors.auth',
                'django.contrib.messages.context_processors.messages',
            ],
        },
    },
]

WSGI_APPLICATION = 'driftsim.wsgi.application'


# Database
# https://docs.djangoproject.com/en/2.2/ref/settings/#databases

DATABASES = {
    'default': {
        'ENGINE': 'django.db.backends.sqlite3',
        'NAME': os.path.join(BASE_DIR, 'db.sqlite3'),
    }
}


# Internationalization
# https://docs.djangoproject.com/en/2.2/topics/i18n/

LANGUAGE_CODE = 'ru'

TIME_ZONE = 'UTC'

USE_I18N = True

USE_L10N = True

USE_TZ = True


# Static files (CSS, JavaScript, Images)
# https://docs.djangoproject.com/en/2.2/howto/static-files/

STATIC_URL = '/static/'


# Logging
# DRIFTSIM_LOG_LEVEL: error | info | debug

_LOG_LEVELS = {
    'error': 'ERROR',
    'info': 'INFO',
    'debug': 'DEBUG',
}
DRIFTSIM_LOG_LEVEL = _LOG_LEVELS.get(
    os.getenv('DRIFTSIM_LOG_LEVEL', 'info').lower(), 'INFO')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'simple': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'simple',
        },
    },
    'loggers': {
        app: {
            'handlers': ['console'],
            'level': DRIFTSIM_LOG_LEVEL,
            'propagate': False,
        }
        for app in (
            'core', 'windfield', 'dynamics', 'controller',
            'trajgen', 'driftframe', 'simengine', 'cli',
        )
    },
}


# Simulation environment

DRIFTSIM_ENV = {
    'rho': 1.225,
    'g': (0.0, 0.0, -9.81),
}

DRIFTSIM_SCENARIOS_DIR = os.path.join(BASE_DIR, 'scenarios')

# Trajectory generation
DRIFTSIM_EPSILON_S = 0.01
DRIFTSIM_MIN_TRANSITION = 0.5
DRIFTSIM_CLUSTER_RANGE_GAP = 1.0
DRIFTSIM_CLUSTER_BEARING_GAP_DEG = 5.0
DRIFTSIM_SWEEP_RESOLUTION_DEG = 0.5
DRIFTSIM_ACCEL_CHECK_STEP = 0.01
DRIFTSIM_COURSE_DEADBAND_DEG = 0.5

# Drift frame and parameter adaptation
DRIFTSIM_DRIFT_HYSTERESIS = 0.8
DRIFTSIM_AUTHORITY_RESERVE = 0.3
DRIFTSIM_RC_HOLD_DOWN = 5.0
DRIFTSIM_WIND_FILTER_TAU = 1.0
DRIFTSIM_WIND_MAX_WINDOW = 10.0
DRIFTSIM_WIND_MIN_DRAG = 1e-4
DRIFTSIM_CRUISE_TOLERANCE = 1e-4

# Flight controller
DRIFTSIM_TILT_LIMIT_DEG = 60.0
DRIFTSIM_SIGN_DEADBAND = 1e-6
DRIFTSIM_PID_INTEGRAL_LIMIT = 0.5
DRIFTSIM_PID_DERIVATIVE_FILTER = 0.01

# Simulation loop
DRIFTSIM_INTEGRATION_SUBSTEP = 0.01
DRIFTSIM_SCAN_RESOLUTION_DEG = 1.0
DRIFTSIM_GOAL_RADIUS = 0.2
DRIFTSIM_GOAL_DWELL = 2.0
