from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from euler_engine import __version__
from euler_engine.routes.representations import router as representations_router
from euler_engine.routes.signatures import router as signatures_router
from euler_engine.utils import clear_caches

app = FastAPI(title="Euler Engine", version=__version__)

# Development setting: allow all origins.
app.add_middleware(
    CORSMiddleware,
    allow_origins=["*"],
    allow_credentials=False,
    allow_methods=["*"],
    allow_headers=["*"],
)

app.include_router(signatures_router)
app.include_router(representations_router)

# Start from empty caches so code changes show immediately
clear_caches()


@app.get("/")
def read_root():
    return {"message": "Euler engine is running", "version": __version__}


@app.get("/health")
def health():
    return {"status": "ok"}
